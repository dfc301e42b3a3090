"""Wyrocznia Monte Carlo: całki Wignera jako wielomiany od niezależnych macierzy GOE."""
import logging
from dataclasses import dataclass
from multiprocessing import Pool, cpu_count
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from rachunek.bledy import BladZakresu, NiezgodnoscSiatek, PrzekroczonyLimit
from rachunek.jadro import Jadro
from rachunek.konfiguracja import pobierz_ustawienia

logger = logging.getLogger('fchaos.wyrocznie')

Ziarno = Union[int, Sequence[int]]


@dataclass
class ZespolMacierzy:
    """Niezależne symetryczne macierze d×d; widmo każdej zmierza do S(0, 1)."""
    wymiar: int
    macierze: List[np.ndarray]
    ziarno: Ziarno


def losuj_zespol(liczba: int, d: int, ziarno: Ziarno) -> ZespolMacierzy:
    # H = (G + Gᵀ)/√(2d): poza przekątną wariancja 1/d, na przekątnej 2/d
    if d < 2:
        raise BladZakresu(f"Wymiar macierzy musi wynosić co najmniej 2, otrzymano: {d}")
    if liczba < 1:
        raise BladZakresu(f"Liczba macierzy musi być dodatnia, otrzymano: {liczba}")
    rng = np.random.default_rng(ziarno)
    macierze = []
    for _ in range(liczba):
        G = rng.normal(size=(d, d))
        macierze.append((G + G.T) / np.sqrt(2 * d))
    return ZespolMacierzy(wymiar=d, macierze=macierze, ziarno=ziarno)


def slad_znormalizowany(M: np.ndarray) -> float:
    return float(np.trace(M)) / M.shape[0]


def _liczba_mnozen(indeksy: np.ndarray) -> int:
    prefiksy = set()
    for indeks in indeksy:
        for dlugosc in range(2, len(indeks) + 1):
            prefiksy.add(tuple(int(i) for i in indeks[:dlugosc]))
    return len(prefiksy)


def macierz_calki(f: Jadro, zespol: ZespolMacierzy, limit_mnozen: Optional[int] = None) -> np.ndarray:
    """Macierz reprezentująca I_n(f) w bazie e_j = h^{-1/2}·1_{komórka j}, I_1(e_j) -> A_j.

    P(i_1..i_n) = P(i_1..i_{n-1})·A_{i_n} - δ(i_{n-1}, i_n)·P(i_1..i_{n-2}),
    współczynniki c = f·h^{n/2}.
    """
    N, n, d = f.siatka.komorki, f.rzad, zespol.wymiar
    if len(zespol.macierze) < N:
        raise NiezgodnoscSiatek(f"Zespół ma {len(zespol.macierze)} macierzy, siatka wymaga {N}")
    if n == 0:
        return f.jako_skalar() * np.eye(d)

    wspolczynniki = f.wartosci * f.siatka.szerokosc ** (n / 2)
    indeksy = np.argwhere(wspolczynniki != 0)
    limit = pobierz_ustawienia().limit_mnozen_macierzy if limit_mnozen is None else limit_mnozen
    wymagane = _liczba_mnozen(indeksy)
    if wymagane > limit:
        raise PrzekroczonyLimit("mnożenia macierzy w rekurencji całki", wymagane, limit,
                                f"rząd {n}, N={N}, {len(indeksy)} niezerowych współczynników")
    logger.debug(f"Macierz całki rzędu {n}: {len(indeksy)} współczynników, {wymagane} mnożeń, d={d}")

    A = zespol.macierze
    pamiec: Dict[Tuple[int, ...], np.ndarray] = {(): np.eye(d)}

    def wielomian(indeks: Tuple[int, ...]) -> np.ndarray:
        if indeks in pamiec:
            return pamiec[indeks]
        if len(indeks) == 1:
            wynik = A[indeks[0]]
        else:
            wynik = wielomian(indeks[:-1]) @ A[indeks[-1]]
            if indeks[-2] == indeks[-1]:
                wynik = wynik - wielomian(indeks[:-2])
        # pełne słowa nie są ponownie potrzebne
        if len(indeks) < n:
            pamiec[indeks] = wynik
        return wynik

    M = np.zeros((d, d))
    for indeks in indeksy:
        klucz = tuple(int(i) for i in indeks)
        M += wspolczynniki[klucz] * wielomian(klucz)
    return M


def _ziarno_proby(ziarno: Ziarno, numer_proby: int) -> List[int]:
    baza = [ziarno] if isinstance(ziarno, (int, np.integer)) else list(ziarno)
    return [int(z) for z in baza] + [numer_proby]


def _jedna_proba(argumenty) -> Dict[int, float]:
    f, rzedy, d, ziarno, numer_proby = argumenty
    zespol = losuj_zespol(f.siatka.komorki, d, _ziarno_proby(ziarno, numer_proby))
    M = macierz_calki(f, zespol)
    wyniki = {}
    P = np.eye(d)
    for k in range(1, max(rzedy) + 1):
        P = P @ M
        if k in rzedy:
            wyniki[k] = slad_znormalizowany(P)
    if 0 in rzedy:
        wyniki[0] = 1.0
    return wyniki


def _jedna_proba_naprzemienna(argumenty) -> float:
    f, g, wzorzec, d, ziarno, numer_proby = argumenty
    zespol = losuj_zespol(f.siatka.komorki, d, _ziarno_proby(ziarno, numer_proby))
    macierze = (macierz_calki(f, zespol), macierz_calki(g, zespol))
    jednostkowa = np.eye(d)
    iloczyn = jednostkowa
    for pozycja, wykladnik in enumerate(wzorzec):
        P = np.linalg.matrix_power(macierze[pozycja % 2], wykladnik)
        iloczyn = iloczyn @ (P - slad_znormalizowany(P) * jednostkowa)
    return slad_znormalizowany(iloczyn)


def _uruchom_proby(funkcja, argumenty: List, watki: int) -> List:
    if watki > 1:
        liczba_workerow = min(watki, cpu_count(), len(argumenty))
        with Pool(processes=liczba_workerow) as pool:
            return pool.map(funkcja, argumenty)
    return [funkcja(a) for a in argumenty]


def _sprawdz_proby(proby: int, ziarno: Ziarno, watki: int) -> None:
    if proby < 2:
        raise BladZakresu(f"Potrzeba co najmniej 2 prób, otrzymano: {proby}")
    if min(_ziarno_proby(ziarno, 0)) < 0:
        raise BladZakresu(f"Ziarno musi być nieujemne, otrzymano: {ziarno}")
    if watki < 1:
        raise BladZakresu(f"Liczba wątków musi być dodatnia, otrzymano: {watki}")


def _srednia_i_blad(wartosci: Sequence[float]) -> Tuple[float, float]:
    tablica = np.asarray(wartosci, dtype=float)
    return float(np.mean(tablica)), float(np.std(tablica, ddof=1) / np.sqrt(len(tablica)))


def szacuj_momenty(f: Jadro, rzedy: Sequence[int], d: int, proby: int, ziarno: Ziarno,
                   watki: int = 1) -> Dict[int, Tuple[float, float]]:
    """Średnie tr̄(M^k) i ich błędy standardowe; wszystkie rzędy z tych samych macierzy."""
    _sprawdz_proby(proby, ziarno, watki)
    rzedy = sorted(set(int(k) for k in rzedy))
    if not rzedy or rzedy[0] < 0:
        raise BladZakresu(f"Rzędy momentów muszą być nieujemne, otrzymano: {rzedy}")
    argumenty = [(f, rzedy, d, ziarno, numer) for numer in range(proby)]
    wyniki = _uruchom_proby(_jedna_proba, argumenty, watki)
    return {k: _srednia_i_blad([w[k] for w in wyniki]) for k in rzedy}


def szacuj_moment(f: Jadro, k: int, d: int, proby: int, ziarno: Ziarno, watki: int = 1) -> Tuple[float, float]:
    return szacuj_momenty(f, [k], d, proby, ziarno, watki)[k]


def szacuj_slad_naprzemienny(f: Jadro, g: Jadro, wzorzec: Sequence[int], d: int, proby: int,
                             ziarno: Ziarno, watki: int = 1) -> Tuple[float, float]:
    """tr̄(∏ (M^{k_i} - tr̄(M^{k_i})·I)) z M przemiennie M_f, M_g (wzorzec zaczyna się od f)."""
    _sprawdz_proby(proby, ziarno, watki)
    if f.siatka != g.siatka:
        raise NiezgodnoscSiatek(f"Różne siatki: {f.siatka} i {g.siatka}")
    if not wzorzec or any(k < 1 for k in wzorzec):
        raise BladZakresu(f"Wzorzec musi składać się z dodatnich wykładników, otrzymano: {list(wzorzec)}")
    argumenty = [(f, g, tuple(wzorzec), d, ziarno, numer) for numer in range(proby)]
    return _srednia_i_blad(_uruchom_proby(_jedna_proba_naprzemienna, argumenty, watki))
