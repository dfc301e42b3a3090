import json
import logging
import math
from typing import Dict, List, Optional, Tuple

import numpy as np

from rachunek.bledy import BladSymetrii, BladZakresu, NiezgodnoscSiatek, PrzekroczonyLimit
from rachunek.jadro import (Jadro, Siatka, czy_symetryczne, jadro_do_slownika, jadro_ze_slownika,
                            sprawdz_rozmiar)
from rachunek.kontrakcje import kontrakcja_zagniezdzona

logger = logging.getLogger('fchaos.rachunek')

Podzial = Tuple[int, int]

# np.einsum przyjmuje co najwyżej 52 różne etykiety osi
MAKS_ETYKIET = 52


class BiJadro:
    """Jądro f ∈ L²(R₊ⁿ) ⊗ L²(R₊ᵐ) z ustalonym podziałem argumentów (n | m)."""

    def __init__(self, siatka: Siatka, rzad_lewy: int, rzad_prawy: int, wartosci) -> None:
        tablica = np.array(wartosci, dtype=float)
        if rzad_lewy < 0 or rzad_prawy < 0 or tablica.ndim != rzad_lewy + rzad_prawy:
            raise BladZakresu(
                f"Podział ({rzad_lewy}|{rzad_prawy}) nie pasuje do tensora rzędu {tablica.ndim}")
        if any(d != siatka.komorki for d in tablica.shape):
            raise NiezgodnoscSiatek(f"Kształt {tablica.shape} nie pasuje do siatki N={siatka.komorki}")
        if not np.all(np.isfinite(tablica)):
            raise BladZakresu("Bi-jądro zawiera wartości nieskończone lub NaN")
        tablica.setflags(write=False)
        self.siatka = siatka
        self.rzad_lewy = rzad_lewy
        self.rzad_prawy = rzad_prawy
        self.wartosci = tablica

    @property
    def podzial(self) -> Podzial:
        return self.rzad_lewy, self.rzad_prawy

    def norma(self) -> float:
        waga = self.siatka.szerokosc ** (self.rzad_lewy + self.rzad_prawy)
        return math.sqrt(float(np.sum(self.wartosci * self.wartosci)) * waga)

    def czy_zerowe(self, tolerancja: Optional[float] = None) -> bool:
        return self.jako_jadro().czy_zerowe(tolerancja)

    def jako_jadro(self) -> Jadro:
        return Jadro(self.siatka, self.wartosci)

    def __repr__(self) -> str:
        return f"BiJadro(({self.rzad_lewy}|{self.rzad_prawy}), N={self.siatka.komorki})"


def bijadro_z_jadra(f: Jadro, rzad_lewy: int) -> BiJadro:
    if not (0 <= rzad_lewy <= f.rzad):
        raise BladZakresu(f"Rząd lewy {rzad_lewy} poza zakresem 0..{f.rzad}")
    return BiJadro(f.siatka, rzad_lewy, f.rzad - rzad_lewy, f.wartosci)


class ElementBiChaosu:
    """skalar·(1⊗1) + Σ_{(n,m)} [I_n ⊗ I_m](f_{n,m})."""

    def __init__(self, siatka: Siatka, skalar: float = 0.0,
                 czesci: Optional[Dict[Podzial, BiJadro]] = None) -> None:
        self.siatka = siatka
        skalar = float(skalar)
        oczyszczone = {}
        for klucz, f in sorted((czesci or {}).items()):
            if f.podzial != tuple(klucz):
                raise BladZakresu(f"Część {klucz} zawiera bi-jądro o podziale {f.podzial}")
            if f.siatka != siatka:
                raise NiezgodnoscSiatek(f"Część {klucz} ma siatkę {f.siatka}, element {siatka}")
            if f.podzial == (0, 0):
                skalar += float(f.wartosci)
            elif not f.czy_zerowe():
                oczyszczone[f.podzial] = f
        self.skalar = skalar
        self.czesci = oczyszczone

    def skladniki(self) -> List[BiJadro]:
        """Wszystkie części łącznie ze skalarem jako bi-jądrem podziału (0|0)."""
        wynik = []
        if self.skalar != 0.0:
            wynik.append(BiJadro(self.siatka, 0, 0, np.array(self.skalar)))
        wynik.extend(self.czesci.values())
        return wynik

    def czy_zerowy(self, tolerancja: Optional[float] = None) -> bool:
        zero = BiJadro(self.siatka, 0, 0, np.array(self.skalar))
        return zero.czy_zerowe(tolerancja) and not self.czesci

    def __add__(self, inny: 'ElementBiChaosu') -> 'ElementBiChaosu':
        return _kombinacja(1.0, self, 1.0, inny)

    def __sub__(self, inny: 'ElementBiChaosu') -> 'ElementBiChaosu':
        return _kombinacja(1.0, self, -1.0, inny)

    def __mul__(self, liczba: float) -> 'ElementBiChaosu':
        if isinstance(liczba, ElementBiChaosu):
            return pomnoz_krzyzykowo(self, liczba)
        czesci = {k: BiJadro(self.siatka, *k, float(liczba) * f.wartosci) for k, f in self.czesci.items()}
        return ElementBiChaosu(self.siatka, float(liczba) * self.skalar, czesci)

    def __rmul__(self, liczba: float) -> 'ElementBiChaosu':
        return self.__mul__(float(liczba))

    def __repr__(self) -> str:
        return f"ElementBiChaosu(skalar={self.skalar:.6g}, podzialy={list(self.czesci)})"


def _kombinacja(a: float, A: ElementBiChaosu, b: float, B: ElementBiChaosu) -> ElementBiChaosu:
    if A.siatka != B.siatka:
        raise NiezgodnoscSiatek(f"Różne siatki: {A.siatka} i {B.siatka}")
    czesci = {}
    for klucz in sorted(set(A.czesci) | set(B.czesci)):
        wartosci = np.zeros((A.siatka.komorki,) * sum(klucz))
        if klucz in A.czesci:
            wartosci = wartosci + a * A.czesci[klucz].wartosci
        if klucz in B.czesci:
            wartosci = wartosci + b * B.czesci[klucz].wartosci
        czesci[klucz] = BiJadro(A.siatka, *klucz, wartosci)
    return ElementBiChaosu(A.siatka, a * A.skalar + b * B.skalar, czesci)


def bicalka(f: BiJadro) -> ElementBiChaosu:
    return ElementBiChaosu(f.siatka, 0.0, {f.podzial: f})


def bisprzezenie(A: ElementBiChaosu) -> ElementBiChaosu:
    """(a ⊗ b)* = a* ⊗ b*: odwrócenie argumentów osobno w każdej nodze."""
    czesci = {}
    for (n, m), f in A.czesci.items():
        uklad = tuple(reversed(range(n))) + tuple(reversed(range(n, n + m)))
        czesci[(n, m)] = BiJadro(A.siatka, n, m, np.transpose(f.wartosci, uklad))
    return ElementBiChaosu(A.siatka, A.skalar, czesci)


def bikontrakcja(f: BiJadro, g: BiJadro, p: int, r: int) -> BiJadro:
    """f ⌢_{p,r} g: lewe nogi kontrahowane jak f_L ⌢_p g_L, prawe jak g_R ⌢_r f_R.

    Zgodne z (A⊗B) ♯ (C⊗D) = (AC) ⊗ (DB): lewa noga wyniku to (f_L, g_L), prawa to (g_R, f_R).
    """
    if f.siatka != g.siatka:
        raise NiezgodnoscSiatek(f"Różne siatki: {f.siatka} i {g.siatka}")
    n1, m1 = f.podzial
    n2, m2 = g.podzial
    if not (0 <= p <= min(n1, n2)) or not (0 <= r <= min(m1, m2)):
        raise BladZakresu(
            f"Bikontrakcja ({p},{r}) poza zakresem dla podziałów ({n1}|{m1}) i ({n2}|{m2})")
    lewy, prawy = n1 + n2 - 2 * p, m1 + m2 - 2 * r
    sprawdz_rozmiar(f.siatka, lewy + prawy, f"bikontrakcja ⌢_({p},{r})")
    if f.wartosci.ndim == 0:
        return BiJadro(f.siatka, lewy, prawy, float(f.wartosci) * g.wartosci)
    if g.wartosci.ndim == 0:
        return BiJadro(f.siatka, lewy, prawy, float(g.wartosci) * f.wartosci)
    if n1 + m1 + (n2 - p) + (m2 - r) > MAKS_ETYKIET:
        raise PrzekroczonyLimit("bikontrakcja (liczba osi)", n1 + m1 + n2 + m2 - p - r, MAKS_ETYKIET)

    etykiety_fl = list(range(n1))
    etykiety_fr = list(range(n1, n1 + m1))
    nastepna = n1 + m1
    etykiety_gl = []
    for i in range(n2):
        if i < p:
            etykiety_gl.append(etykiety_fl[n1 - 1 - i])
        else:
            etykiety_gl.append(nastepna)
            nastepna += 1
    etykiety_gr = []
    for i in range(m2):
        if i >= m2 - r:
            etykiety_gr.append(etykiety_fr[m2 - 1 - i])
        else:
            etykiety_gr.append(nastepna)
            nastepna += 1

    wyjscie = etykiety_fl[:n1 - p] + etykiety_gl[p:] + etykiety_gr[:m2 - r] + etykiety_fr[r:]
    wynik = np.einsum(f.wartosci, etykiety_fl + etykiety_fr, g.wartosci, etykiety_gl + etykiety_gr,
                      wyjscie, optimize=True)
    return BiJadro(f.siatka, lewy, prawy, wynik * f.siatka.szerokosc ** (p + r))


def pomnoz_krzyzykowo(A: ElementBiChaosu, B: ElementBiChaosu) -> ElementBiChaosu:
    """A ♯ B = Σ Σ_{p,r} [I ⊗ I](f ⌢_{p,r} g)."""
    if A.siatka != B.siatka:
        raise NiezgodnoscSiatek(f"Różne siatki: {A.siatka} i {B.siatka}")
    skladniki_a, skladniki_b = A.skladniki(), B.skladniki()
    if not skladniki_a or not skladniki_b:
        return ElementBiChaosu(A.siatka)
    maks = max(sum(f.podzial) for f in skladniki_a) + max(sum(g.podzial) for g in skladniki_b)
    sprawdz_rozmiar(A.siatka, maks, "iloczyn ♯")

    sumy: Dict[Podzial, np.ndarray] = {}
    for f in skladniki_a:
        for g in skladniki_b:
            for p in range(min(f.rzad_lewy, g.rzad_lewy) + 1):
                for r in range(min(f.rzad_prawy, g.rzad_prawy) + 1):
                    h = bikontrakcja(f, g, p, r)
                    if h.podzial in sumy:
                        sumy[h.podzial] = sumy[h.podzial] + h.wartosci
                    else:
                        sumy[h.podzial] = h.wartosci
    czesci = {klucz: BiJadro(A.siatka, *klucz, wartosci) for klucz, wartosci in sumy.items()}
    return ElementBiChaosu(A.siatka, 0.0, czesci)


def gradient_w_komorce(f: Jadro, komorka: int) -> ElementBiChaosu:
    """∇_t I_n(f) dla t w komórce `komorka`: Σ_k [I_{k-1} ⊗ I_{n-k}](f z t wstawionym na miejsce k)."""
    if not (0 <= komorka < f.siatka.komorki):
        raise BladZakresu(f"Komórka {komorka} poza siatką 0..{f.siatka.komorki - 1}")
    czesci = {}
    for k in range(1, f.rzad + 1):
        wycinek = np.take(f.wartosci, komorka, axis=k - 1)
        czesci[(k - 1, f.rzad - k)] = BiJadro(f.siatka, k - 1, f.rzad - k, wycinek)
    return ElementBiChaosu(f.siatka, 0.0, czesci)


def _sprawdz_symetrie(f: Jadro, g: Jadro) -> None:
    if f.siatka != g.siatka:
        raise NiezgodnoscSiatek(f"Różne siatki: {f.siatka} i {g.siatka}")
    for nazwa, jadro in (("f", f), ("g", g)):
        if not czy_symetryczne(jadro):
            raise BladSymetrii(f"Iloczyn gradientów wymaga jąder w pełni symetrycznych; {nazwa} nie jest symetryczne")


def iloczyn_gradientow(f: Jadro, g: Jadro) -> ElementBiChaosu:
    """<∇I_n(f), ∇I_m(g)> = Σ_{k,q,p,r} [I_{k+q-2-2p} ⊗ I_{n+m-k-q-2r}](f ⌢_{p+r+1} g)."""
    _sprawdz_symetrie(f, g)
    n, m = f.rzad, g.rzad
    kontrakcje: Dict[int, np.ndarray] = {}
    sumy: Dict[Podzial, np.ndarray] = {}
    for k in range(1, n + 1):
        for q in range(1, m + 1):
            for p in range(min(k, q)):
                for r in range(min(n - k, m - q) + 1):
                    u = p + r + 1
                    if u not in kontrakcje:
                        kontrakcje[u] = kontrakcja_zagniezdzona(f, g, u).wartosci
                    # osie f ⌢_u g: najpierw n-u argumentów f, potem m-u argumentów g
                    osie_f = list(range(n - u))
                    osie_g = list(range(n - u, n + m - 2 * u))
                    a, b = k - 1 - p, q - 1 - p
                    uklad = osie_f[:a] + osie_g[:b] + osie_g[b:] + osie_f[a:]
                    klucz = (a + b, n + m - 2 * u - a - b)
                    wartosci = np.transpose(kontrakcje[u], uklad)
                    if klucz in sumy:
                        sumy[klucz] = sumy[klucz] + wartosci
                    else:
                        sumy[klucz] = wartosci
    logger.debug(f"Iloczyn gradientów rzędów ({n}, {m}): podziały {sorted(sumy)}")
    czesci = {klucz: BiJadro(f.siatka, *klucz, wartosci) for klucz, wartosci in sumy.items()}
    return ElementBiChaosu(f.siatka, 0.0, czesci)


def iloczyn_gradientow_komorkowo(f: Jadro, g: Jadro) -> ElementBiChaosu:
    """Ta sama wielkość liczona wprost: Σ_s h · ∇_s I(f) ♯ (∇_s I(g))*."""
    if f.siatka != g.siatka:
        raise NiezgodnoscSiatek(f"Różne siatki: {f.siatka} i {g.siatka}")
    h = f.siatka.szerokosc
    suma = ElementBiChaosu(f.siatka)
    for komorka in range(f.siatka.komorki):
        skladnik = pomnoz_krzyzykowo(gradient_w_komorce(f, komorka),
                                     bisprzezenie(gradient_w_komorce(g, komorka)))
        suma = suma + h * skladnik
    return suma


def norma_phi2_kwadrat(A: ElementBiChaosu) -> float:
    """φ⊗φ(A A*) = skalar² + Σ ||f_{n,m}||² (bi-izometria: różne podziały są ortogonalne)."""
    return A.skalar ** 2 + sum(f.norma() ** 2 for f in A.czesci.values())


def bijadro_do_slownika(f: BiJadro) -> Dict:
    slownik = jadro_do_slownika(f.jako_jadro())
    slownik["left_order"] = f.rzad_lewy
    slownik["right_order"] = f.rzad_prawy
    return slownik


def bijadro_ze_slownika(slownik: Dict) -> BiJadro:
    f = jadro_ze_slownika(slownik)
    return BiJadro(f.siatka, int(slownik["left_order"]), int(slownik["right_order"]), f.wartosci)


def bijadro_do_json(f: BiJadro) -> str:
    return json.dumps(bijadro_do_slownika(f))


def bijadro_z_json(tekst: str) -> BiJadro:
    return bijadro_ze_slownika(json.loads(tekst))
