"""Kryteria wolności par całek wielokrotnych.

Dla jąder symetrycznych wszystkie kryteria są równoważne: znikanie pierwszej kontrakcji
(⌢_1 dla Wignera, ⋆_1 dla wolnego Poissona), nieskorelowanie kwadratów, znikanie iloczynu
gradientów (tylko Wigner) i znikanie naprzemiennych momentów scentrowanych.
"""
import itertools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from rachunek.bichaos import iloczyn_gradientow, norma_phi2_kwadrat
from rachunek.bledy import BladSymetrii, BladZakresu, NiezgodnoscSiatek, PrzekroczonyLimit
from rachunek.chaos import (ElementChaosu, Rodzaj, calka, phi, phi_iloczynu, pomnoz, potegi,
                            wycentruj)
from rachunek.jadro import Jadro, czy_lustrzanie_symetryczne, czy_symetryczne, permutuj
from rachunek.konfiguracja import pobierz_ustawienia
from rachunek.kontrakcje import kontrakcja_gwiazdkowa, kontrakcja_zagniezdzona, normy_kontrakcji
from wolnosc.werdykty import Metoda, WerdyktWolnosci

logger = logging.getLogger('fchaos.wolnosc')

Wzorzec = Tuple[int, ...]


def _tolerancja(tolerancja: Optional[float]) -> float:
    return pobierz_ustawienia().tolerancja_dokladna if tolerancja is None else tolerancja


def _wymagaj_symetrii(f: Jadro, g: Jadro, kto: str, wskazowka: str = "") -> None:
    if f.siatka != g.siatka:
        raise NiezgodnoscSiatek(f"{kto}: różne siatki {f.siatka} i {g.siatka}")
    if f.rzad < 1 or g.rzad < 1:
        raise BladZakresu(f"{kto}: jądra muszą mieć rząd >= 1, otrzymano ({f.rzad}, {g.rzad})")
    for nazwa, jadro in (("f", f), ("g", g)):
        if not czy_symetryczne(jadro):
            raise BladSymetrii(f"{kto}: jądro {nazwa} nie jest symetryczne{wskazowka}")


def pierwsza_kontrakcja(rodzaj: Rodzaj, f: Jadro, g: Jadro) -> Jadro:
    if rodzaj is Rodzaj.WIGNER:
        return kontrakcja_zagniezdzona(f, g, 1)
    return kontrakcja_gwiazdkowa(f, g, 1)


def sprawdz_kontrakcje(rodzaj: Rodzaj, f: Jadro, g: Jadro,
                       tolerancja: Optional[float] = None) -> WerdyktWolnosci:
    """I_n(f), I_m(g) wolne <=> f ⌢_1 g = 0 (Wigner) albo f ⋆_1 g = 0 (wolny Poisson)."""
    _wymagaj_symetrii(f, g, "sprawdz_kontrakcje",
                      "; dla jąder lustrzanie symetrycznych użyj sprawdz_kontrakcje_permutowane")
    nazwa = "norm_nested_1" if rodzaj is Rodzaj.WIGNER else "norm_star_1"
    norma = pierwsza_kontrakcja(rodzaj, f, g).norma()
    return WerdyktWolnosci.ze_swiadka(Metoda.KONTRAKCJE, {nazwa: norma}, _tolerancja(tolerancja),
                                      szczegoly={"kind": rodzaj.value})


def sprawdz_kontrakcje_permutowane(rodzaj: Rodzaj, f: Jadro, g: Jadro,
                                   tolerancja: Optional[float] = None) -> WerdyktWolnosci:
    """Warunek wystarczający: f^(σ) ⌢_1 g^(π) = 0 dla wszystkich σ, π.

    Werdykt 'wolne' jest rozstrzygający, werdykt 'niewolne' tylko informacyjny.
    """
    if f.siatka != g.siatka:
        raise NiezgodnoscSiatek(f"sprawdz_kontrakcje_permutowane: różne siatki {f.siatka} i {g.siatka}")
    for nazwa, jadro in (("f", f), ("g", g)):
        if not czy_lustrzanie_symetryczne(jadro):
            raise BladSymetrii(f"sprawdz_kontrakcje_permutowane: jądro {nazwa} nie jest lustrzanie symetryczne")
    limit = pobierz_ustawienia().limit_permutacji
    if max(f.rzad, g.rzad) > limit:
        raise PrzekroczonyLimit("test kontrakcji permutowanych (rząd jądra)", max(f.rzad, g.rzad), limit)
    if f.rzad < 1 or g.rzad < 1:
        raise BladZakresu(f"Jądra muszą mieć rząd >= 1, otrzymano ({f.rzad}, {g.rzad})")

    permutacje_g = [(pi, permutuj(g, pi)) for pi in itertools.permutations(range(g.rzad))]
    najwieksza, najgorsza_para = 0.0, None
    liczba_par = 0
    for sigma in itertools.permutations(range(f.rzad)):
        f_sigma = permutuj(f, sigma)
        for pi, g_pi in permutacje_g:
            norma = pierwsza_kontrakcja(rodzaj, f_sigma, g_pi).norma()
            liczba_par += 1
            if norma > najwieksza:
                najwieksza, najgorsza_para = norma, (list(sigma), list(pi))

    werdykt = WerdyktWolnosci.ze_swiadka(
        Metoda.KONTRAKCJE_PERMUTOWANE, {"max_norm_permuted": najwieksza}, _tolerancja(tolerancja),
        szczegoly={"kind": rodzaj.value, "pairs_checked": liczba_par,
                   "worst_pair": najgorsza_para})
    werdykt.rozstrzygajacy = werdykt.czy_wolne
    return werdykt


def kowariancja_kwadratow(rodzaj: Rodzaj, f: Jadro, g: Jadro) -> Tuple[float, float]:
    """Cov(F², G²) liczona wprost oraz z rozwinięcia Σ_p ||f ⌢_p g||² (+ Σ_p ||f ⋆_p g||² dla Poissona)."""
    _wymagaj_symetrii(f, g, "kowariancja_kwadratow")
    F, G = calka(rodzaj, f), calka(rodzaj, g)
    F2, G2 = pomnoz(F, F), pomnoz(G, G)
    bezposrednia = phi_iloczynu(F2, G2) - phi(F2) * phi(G2)
    normy = normy_kontrakcji(f, g, gwiazdkowe=rodzaj is Rodzaj.WOLNY_POISSON)
    z_rozwiniecia = sum(norma ** 2 for norma in normy.values())
    return bezposrednia, z_rozwiniecia


def sprawdz_kowariancje(rodzaj: Rodzaj, f: Jadro, g: Jadro,
                        tolerancja: Optional[float] = None) -> WerdyktWolnosci:
    bezposrednia, z_rozwiniecia = kowariancja_kwadratow(rodzaj, f, g)
    return WerdyktWolnosci.ze_swiadka(Metoda.KOWARIANCJA, {"cov_squares": bezposrednia},
                                      _tolerancja(tolerancja),
                                      szczegoly={"kind": rodzaj.value, "expansion": z_rozwiniecia})


def sprawdz_gradient(f: Jadro, g: Jadro, tolerancja: Optional[float] = None) -> WerdyktWolnosci:
    """I_n(f), I_m(g) (Wigner) wolne <=> <∇I_n(f), ∇I_m(g)> = 0."""
    _wymagaj_symetrii(f, g, "sprawdz_gradient")
    wartosc = norma_phi2_kwadrat(iloczyn_gradientow(f, g))
    return WerdyktWolnosci.ze_swiadka(Metoda.GRADIENT, {"phi2_norm_sq_gradient_pairing": wartosc},
                                      _tolerancja(tolerancja), szczegoly={"kind": Rodzaj.WIGNER.value})


def wzorce_naprzemienne(glebokosc: int) -> List[Wzorzec]:
    """Wzorce (k_1, ..., k_{2l}) o sumie <= glebokosc, w porządku leksykograficznym.

    Słowa zaczynające się od G są cyklicznymi obrotami słów zaczynających się od F,
    więc przy śladowym φ wystarczają te drugie.
    """
    wzorce: List[Wzorzec] = []

    def rozszerz(prefiks: List[int], suma: int) -> None:
        if len(prefiks) >= 2 and len(prefiks) % 2 == 0:
            wzorce.append(tuple(prefiks))
        for k in range(1, glebokosc - suma + 1):
            rozszerz(prefiks + [k], suma + k)

    rozszerz([], 0)
    return sorted(wzorce)


def _najlepszy_podzial(rzedy: Sequence[int]) -> Tuple[int, int]:
    """Miejsce podziału słowa na dwie połowy minimalizujące większy rząd tensora."""
    najlepszy = (1, max(sum(rzedy[:1]), sum(rzedy[1:])))
    for j in range(2, len(rzedy)):
        szczyt = max(sum(rzedy[:j]), sum(rzedy[j:]))
        if szczyt < najlepszy[1]:
            najlepszy = (j, szczyt)
    return najlepszy


class _CentrowanePotegi:
    """Potęgi X liczone leniwie i zapamiętywane; zwracane po scentrowaniu."""

    def __init__(self, X: ElementChaosu) -> None:
        self.X = X
        self.potegi = potegi(X, 1)

    def __getitem__(self, k: int) -> ElementChaosu:
        while len(self.potegi) <= k:
            self.potegi.append(pomnoz(self.potegi[-1], self.X))
        return wycentruj(self.potegi[k])


def _iloczyn(czynniki: Sequence[ElementChaosu]) -> ElementChaosu:
    wynik = czynniki[0]
    for czynnik in czynniki[1:]:
        wynik = pomnoz(wynik, czynnik)
    return wynik


def sprawdz_momenty_naprzemienne(rodzaj: Rodzaj, f: Jadro, g: Jadro, glebokosc: int,
                                 tolerancja: Optional[float] = None,
                                 wzorce: Optional[Sequence[Wzorzec]] = None,
                                 budzet: Optional[int] = None) -> WerdyktWolnosci:
    """φ(Π [F^{k_1} - φ(F^{k_1})][G^{k_2} - φ(G^{k_2})] ...) dla wzorców o sumie <= glebokosc.

    Wzorce, których przewidywany największy tensor przekracza budżet, są pomijane;
    werdykt 'wolne' przy pominiętych wzorcach nie jest rozstrzygający.
    """
    if glebokosc < 2:
        raise BladZakresu(f"Głębokość musi wynosić co najmniej 2, otrzymano: {glebokosc}")
    if f.siatka != g.siatka:
        raise NiezgodnoscSiatek(f"sprawdz_momenty_naprzemienne: różne siatki {f.siatka} i {g.siatka}")
    if wzorce is None:
        wzorce = wzorce_naprzemienne(glebokosc)
    else:
        wzorce = [tuple(int(k) for k in w) for w in wzorce]
        for wzorzec in wzorce:
            if len(wzorzec) < 2 or len(wzorzec) % 2 or min(wzorzec) < 1 or sum(wzorzec) > glebokosc:
                raise BladZakresu(f"Niepoprawny wzorzec {wzorzec} dla głębokości {glebokosc}")
    if budzet is None:
        budzet = pobierz_ustawienia().maks_elementow_tensora

    F, G = calka(rodzaj, f), calka(rodzaj, g)
    potegi_f, potegi_g = _CentrowanePotegi(F), _CentrowanePotegi(G)
    N = f.siatka.komorki

    wartosci: Dict[str, float] = {}
    pominiete: List[Wzorzec] = []
    for wzorzec in wzorce:
        rzedy = [k * (f.rzad if i % 2 == 0 else g.rzad) for i, k in enumerate(wzorzec)]
        podzial, szczyt = _najlepszy_podzial(rzedy)
        if N ** szczyt > budzet:
            logger.debug(f"Pominięto wzorzec {wzorzec}: {N ** szczyt:,} elementów > {budzet:,}")
            pominiete.append(wzorzec)
            continue
        czynniki = [potegi_f[k] if i % 2 == 0 else potegi_g[k] for i, k in enumerate(wzorzec)]
        wartosc = phi_iloczynu(_iloczyn(czynniki[:podzial]), _iloczyn(czynniki[podzial:]))
        wartosci[",".join(map(str, wzorzec))] = wartosc
        logger.debug(f"Wzorzec {wzorzec}: φ = {wartosc:.6g}")

    najwiekszy = max((abs(v) for v in wartosci.values()), default=0.0)
    tol = _tolerancja(tolerancja)
    werdykt = WerdyktWolnosci.ze_swiadka(
        Metoda.MOMENTY_NAPRZEMIENNE, {"max_abs_alternating_moment": najwiekszy}, tol,
        szczegoly={
            "kind": rodzaj.value,
            "depth": glebokosc,
            "evaluated": len(wartosci),
            "skipped": [list(w) for w in pominiete],
            "total": len(wzorce),
            "moments": wartosci,
        })
    werdykt.rozstrzygajacy = not werdykt.czy_wolne or not pominiete
    return werdykt
