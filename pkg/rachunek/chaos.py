import json
import logging
from enum import Enum
from typing import Dict, List, Optional

import numpy as np

from rachunek.bledy import BladZakresu, NiezgodnoscSiatek
from rachunek.jadro import (Jadro, Siatka, iloczyn_skalarny, jadro_do_slownika, jadro_ze_slownika,
                            czy_lustrzanie_symetryczne, sprawdz_rozmiar, sprzezenie, zagesc)
from rachunek.kontrakcje import kontrakcja_gwiazdkowa, kontrakcja_zagniezdzona

logger = logging.getLogger('fchaos.rachunek')


class Rodzaj(Enum):
    WIGNER = 'wigner'
    WOLNY_POISSON = 'free_poisson'

    @classmethod
    def z_nazwy(cls, nazwa: str) -> 'Rodzaj':
        try:
            return cls(nazwa)
        except ValueError:
            dostepne = ", ".join(r.value for r in cls)
            raise BladZakresu(f"Nieznany rodzaj chaosu: {nazwa} (dostępne: {dostepne})")


class ElementChaosu:
    """F = skalar·1 + Σ_n I_n(f_n) dla całek Wignera albo wolnego procesu Poissona."""

    def __init__(self, rodzaj: Rodzaj, siatka: Siatka, skalar: float = 0.0,
                 czesci: Optional[Dict[int, Jadro]] = None) -> None:
        self.rodzaj = rodzaj
        self.siatka = siatka
        self.skalar = float(skalar)
        oczyszczone = {}
        for n, f in sorted((czesci or {}).items()):
            if n < 1 or f.rzad != n:
                raise BladZakresu(f"Część rzędu {n} zawiera jądro rzędu {f.rzad}")
            if f.siatka != siatka:
                raise NiezgodnoscSiatek(f"Część rzędu {n} ma siatkę {f.siatka}, element {siatka}")
            if not f.czy_zerowe():
                oczyszczone[n] = f
        self.czesci = oczyszczone

    @property
    def maks_rzad(self) -> int:
        return max(self.czesci, default=0)

    def czy_samosprzezony(self, tolerancja: Optional[float] = None) -> bool:
        return all(czy_lustrzanie_symetryczne(f, tolerancja) for f in self.czesci.values())

    def __add__(self, inny: 'ElementChaosu') -> 'ElementChaosu':
        return kombinacja(1.0, self, 1.0, inny)

    def __sub__(self, inny: 'ElementChaosu') -> 'ElementChaosu':
        return kombinacja(1.0, self, -1.0, inny)

    def __neg__(self) -> 'ElementChaosu':
        return przeskaluj(self, -1.0)

    def __mul__(self, inny) -> 'ElementChaosu':
        if isinstance(inny, ElementChaosu):
            return pomnoz(self, inny)
        return przeskaluj(self, float(inny))

    def __rmul__(self, liczba: float) -> 'ElementChaosu':
        return przeskaluj(self, float(liczba))

    def __repr__(self) -> str:
        return (f"ElementChaosu({self.rodzaj.value}, skalar={self.skalar:.6g}, "
                f"rzedy={list(self.czesci)}, N={self.siatka.komorki})")


def _sprawdz_zgodnosc(X: ElementChaosu, Y: ElementChaosu) -> None:
    if X.rodzaj is not Y.rodzaj:
        raise NiezgodnoscSiatek(f"Różne rodzaje chaosu: {X.rodzaj.value} i {Y.rodzaj.value}")
    if X.siatka != Y.siatka:
        raise NiezgodnoscSiatek(f"Różne siatki: {X.siatka} i {Y.siatka}")


def jednosc(rodzaj: Rodzaj, siatka: Siatka) -> ElementChaosu:
    return ElementChaosu(rodzaj, siatka, 1.0)


def calka(rodzaj: Rodzaj, f: Jadro) -> ElementChaosu:
    if f.rzad == 0:
        return ElementChaosu(rodzaj, f.siatka, f.jako_skalar())
    return ElementChaosu(rodzaj, f.siatka, 0.0, {f.rzad: f})


def przeskaluj(X: ElementChaosu, a: float) -> ElementChaosu:
    return ElementChaosu(X.rodzaj, X.siatka, a * X.skalar, {n: a * f for n, f in X.czesci.items()})


def kombinacja(a: float, X: ElementChaosu, b: float, Y: ElementChaosu) -> ElementChaosu:
    """aX + bY, rząd po rzędzie."""
    _sprawdz_zgodnosc(X, Y)
    czesci = {}
    for n in sorted(set(X.czesci) | set(Y.czesci)):
        wartosci = np.zeros((X.siatka.komorki,) * n)
        if n in X.czesci:
            wartosci = wartosci + a * X.czesci[n].wartosci
        if n in Y.czesci:
            wartosci = wartosci + b * Y.czesci[n].wartosci
        czesci[n] = Jadro(X.siatka, wartosci)
    return ElementChaosu(X.rodzaj, X.siatka, a * X.skalar + b * Y.skalar, czesci)


def pomnoz(X: ElementChaosu, Y: ElementChaosu) -> ElementChaosu:
    """Iloczyn wg wzoru I_n(f)I_m(g) = Σ_p I_{n+m-2p}(f ⌢_p g) (+ Σ_p I_{n+m-2p+1}(f ⋆_p g) dla Poissona)."""
    _sprawdz_zgodnosc(X, Y)
    sprawdz_rozmiar(X.siatka, X.maks_rzad + Y.maks_rzad, "iloczyn elementów chaosu")

    sumy: Dict[int, np.ndarray] = {}
    skalar = X.skalar * Y.skalar

    def dodaj(jadro: Jadro) -> None:
        nonlocal skalar
        if jadro.rzad == 0:
            skalar += jadro.jako_skalar()
        elif jadro.rzad in sumy:
            sumy[jadro.rzad] = sumy[jadro.rzad] + jadro.wartosci
        else:
            sumy[jadro.rzad] = jadro.wartosci

    if Y.skalar != 0.0:
        for f in X.czesci.values():
            dodaj(Y.skalar * f)
    if X.skalar != 0.0:
        for g in Y.czesci.values():
            dodaj(X.skalar * g)

    for n, f in X.czesci.items():
        for m, g in Y.czesci.items():
            for p in range(min(n, m) + 1):
                dodaj(kontrakcja_zagniezdzona(f, g, p))
            if X.rodzaj is Rodzaj.WOLNY_POISSON:
                for p in range(1, min(n, m) + 1):
                    dodaj(kontrakcja_gwiazdkowa(f, g, p))

    czesci = {n: Jadro(X.siatka, wartosci) for n, wartosci in sumy.items()}
    return ElementChaosu(X.rodzaj, X.siatka, skalar, czesci)


def phi(X: ElementChaosu) -> float:
    return X.skalar


def phi_iloczynu(X: ElementChaosu, Y: ElementChaosu) -> float:
    """φ(XY) z izometrii, bez tworzenia iloczynu: x0·y0 + Σ_n <f_n, g_n*>."""
    _sprawdz_zgodnosc(X, Y)
    wynik = X.skalar * Y.skalar
    for n in sorted(set(X.czesci) & set(Y.czesci)):
        wynik += iloczyn_skalarny(X.czesci[n], sprzezenie(Y.czesci[n]))
    return wynik


def potegi(X: ElementChaosu, k: int) -> List[ElementChaosu]:
    """[X^0, X^1, ..., X^k] przez kolejne mnożenia."""
    if k < 0:
        raise BladZakresu(f"Wykładnik potęgi musi być nieujemny, otrzymano: {k}")
    wynik = [jednosc(X.rodzaj, X.siatka)]
    for _ in range(k):
        wynik.append(pomnoz(wynik[-1], X) if len(wynik) > 1 else X)
    return wynik


def potega(X: ElementChaosu, k: int) -> ElementChaosu:
    return potegi(X, k)[-1]


def moment(X: ElementChaosu, k: int) -> float:
    """φ(X^k) = φ(X^⌈k/2⌉ · X^⌊k/2⌋); najwyższy rząd tensora to ⌈k/2⌉·(maks. rząd X)."""
    if k < 0:
        raise BladZakresu(f"Rząd momentu musi być nieujemny, otrzymano: {k}")
    if k == 0:
        return 1.0
    gorna, dolna = (k + 1) // 2, k // 2
    sprawdz_rozmiar(X.siatka, gorna * X.maks_rzad, f"moment rzędu {k}")
    lista = potegi(X, gorna)
    return phi_iloczynu(lista[gorna], lista[dolna])


def wycentruj(X: ElementChaosu) -> ElementChaosu:
    return ElementChaosu(X.rodzaj, X.siatka, 0.0, X.czesci)


def kowariancja(X: ElementChaosu, Y: ElementChaosu) -> float:
    return phi_iloczynu(X, Y) - phi(X) * phi(Y)


def roznica_momentow_poissona(X: ElementChaosu) -> float:
    """φ(X^4) - 2φ(X^3); dla granicy wolnego Poissona P(λ) wynosi 2λ² - λ."""
    return moment(X, 4) - 2.0 * moment(X, 3)


def przesun_jadro(f: Jadro, przesuniecie: int) -> Jadro:
    N = f.siatka.komorki
    if przesuniecie == 0 or f.rzad == 0:
        return f
    niezerowe = np.argwhere(f.wartosci != 0)
    if niezerowe.size == 0:
        return f
    najnizszy, najwyzszy = int(niezerowe.min()), int(niezerowe.max())
    if najwyzszy + przesuniecie > N - 1:
        wymagany = (najwyzszy + przesuniecie + 1) * f.siatka.szerokosc
        raise BladZakresu(
            f"Przesunięcie o {przesuniecie} komórek wychodzi poza siatkę; potrzebny horyzont T >= {wymagany}")
    if najnizszy + przesuniecie < 0:
        raise BladZakresu(
            f"Przesunięcie o {przesuniecie} komórek wychodzi przed 0 (nośnik od komórki {najnizszy})")

    wartosci = np.zeros_like(f.wartosci)
    if przesuniecie > 0:
        cel, zrodlo = slice(przesuniecie, N), slice(0, N - przesuniecie)
    else:
        cel, zrodlo = slice(0, N + przesuniecie), slice(-przesuniecie, N)
    wartosci[(cel,) * f.rzad] = f.wartosci[(zrodlo,) * f.rzad]
    return Jadro(f.siatka, wartosci)


def przesun_w_czasie(X: ElementChaosu, przesuniecie: int) -> ElementChaosu:
    """Kopia X przesunięta o całkowitą liczbę komórek; rozłączne nośniki dają wolną kopię."""
    czesci = {n: przesun_jadro(f, przesuniecie) for n, f in X.czesci.items()}
    return ElementChaosu(X.rodzaj, X.siatka, X.skalar, czesci)


def zagesc_element(X: ElementChaosu, czynnik: int = 2) -> ElementChaosu:
    czesci = {n: zagesc(f, czynnik) for n, f in X.czesci.items()}
    siatka = Siatka(X.siatka.horyzont, X.siatka.komorki * czynnik)
    return ElementChaosu(X.rodzaj, siatka, X.skalar, czesci)


def element_do_slownika(X: ElementChaosu) -> Dict:
    return {
        "kind": X.rodzaj.value,
        "T": X.siatka.horyzont,
        "N": X.siatka.komorki,
        "scalar": X.skalar,
        "parts": [{"order": n, "kernel": jadro_do_slownika(f)} for n, f in X.czesci.items()],
    }


def element_ze_slownika(slownik: Dict) -> ElementChaosu:
    rodzaj = Rodzaj.z_nazwy(slownik["kind"])
    czesci = {}
    for czesc in slownik.get("parts", []):
        f = jadro_ze_slownika(czesc["kernel"])
        if f.rzad != czesc["order"]:
            raise BladZakresu(f"Część deklaruje rząd {czesc['order']}, jądro ma rząd {f.rzad}")
        czesci[f.rzad] = f
    if "T" in slownik and "N" in slownik:
        siatka = Siatka(slownik["T"], slownik["N"])
    elif czesci:
        siatka = next(iter(czesci.values())).siatka
    else:
        raise BladZakresu("Element bez części wymaga pól 'T' i 'N'")
    return ElementChaosu(rodzaj, siatka, slownik.get("scalar", 0.0), czesci)


def element_do_json(X: ElementChaosu) -> str:
    return json.dumps(element_do_slownika(X))


def element_z_json(tekst: str) -> ElementChaosu:
    return element_ze_slownika(json.loads(tekst))
