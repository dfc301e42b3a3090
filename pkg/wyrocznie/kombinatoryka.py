"""Kombinatoryczne wyrocznie momentów: liczby Catalana, podziały nieprzecinające, wolne kumulanty."""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, List, Sequence, Tuple

from scipy.special import comb

from rachunek.bledy import BladZakresu, PrzekroczonyLimit
from rachunek.konfiguracja import pobierz_ustawienia

Blok = Tuple[int, ...]

# NC(n) dla małych n trzymane w pamięci (NC(10) to 16796 podziałów)
_MAKS_ZAPAMIETYWANY = 10
_pamiec_podzialow: Dict[int, List[Tuple[Blok, ...]]] = {}


def liczba_catalana(k: int) -> int:
    if k < 0:
        raise BladZakresu(f"Indeks liczby Catalana musi być nieujemny, otrzymano: {k}")
    return int(comb(2 * k, k, exact=True)) // (k + 1)


def moment_polkolisty(t: float, k: int) -> float:
    """k-ty moment rozkładu półkolistego S(0, t): 0 dla k nieparzystych, Catalan(k/2)·t^(k/2)."""
    if t <= 0:
        raise BladZakresu(f"Wariancja t musi być dodatnia, otrzymano: {t}")
    if k < 0:
        raise BladZakresu(f"Rząd momentu musi być nieujemny, otrzymano: {k}")
    if k % 2:
        return 0.0
    return float(liczba_catalana(k // 2) * Fraction(t) ** (k // 2))


def _czy_bloki_sie_przecinaja(a: Blok, b: Blok) -> bool:
    # Po scaleniu kolejnych powtórzeń etykiet przeplot a..b..a..b daje co najmniej 4 odcinki
    etykiety = [0 if x in a else 1 for x in sorted(a + b)]
    odcinki = 1 + sum(1 for x, y in zip(etykiety, etykiety[1:]) if x != y)
    return odcinki >= 4


@dataclass(frozen=True)
class PodzialNieprzecinajacy:
    """Podział {1..n} na bloki bez przeplotu a < b < c < d (a, c w jednym bloku, b, d w innym)."""
    bloki: Tuple[Blok, ...]

    def __post_init__(self) -> None:
        bloki = tuple(sorted(tuple(sorted(blok)) for blok in self.bloki))
        if any(not blok for blok in bloki):
            raise BladZakresu("Podział nie może zawierać pustych bloków")
        elementy = sorted(x for blok in bloki for x in blok)
        if elementy != list(range(1, len(elementy) + 1)):
            raise BladZakresu(f"Bloki {bloki} nie dzielą zbioru {{1..{len(elementy)}}}")
        for a, b in combinations(bloki, 2):
            if _czy_bloki_sie_przecinaja(a, b):
                raise BladZakresu(f"Bloki {a} i {b} się przecinają")
        object.__setattr__(self, 'bloki', bloki)

    @property
    def n(self) -> int:
        return sum(len(blok) for blok in self.bloki)

    def rozmiary_blokow(self) -> List[int]:
        return [len(blok) for blok in self.bloki]


def _podzialy_wzgledne(n: int) -> List[Tuple[Blok, ...]]:
    """NC(n) na elementach 0..n-1: blok elementu 0 wyznacza luki dzielone niezależnie."""
    if n in _pamiec_podzialow:
        return _pamiec_podzialow[n]
    if n == 0:
        return [()]
    wynik = []
    for r in range(n):
        for wybrane in combinations(range(1, n), r):
            blok = (0,) + wybrane
            granice = (0,) + wybrane + (n,)
            opcje = []
            for poczatek, koniec in zip(granice, granice[1:]):
                przesuniecie = poczatek + 1
                opcje.append([tuple(tuple(x + przesuniecie for x in b) for b in podzial)
                              for podzial in _podzialy_wzgledne(koniec - przesuniecie)])
            for wybor in product(*opcje):
                wynik.append((blok,) + tuple(b for podzial in wybor for b in podzial))
    if n <= _MAKS_ZAPAMIETYWANY:
        _pamiec_podzialow[n] = wynik
    return wynik


def _sprawdz_ograniczenie(n: int) -> None:
    limit = pobierz_ustawienia().limit_podzialow
    if n < 0:
        raise BladZakresu(f"n musi być nieujemne, otrzymano: {n}")
    if n > limit:
        raise PrzekroczonyLimit("wyliczanie podziałów nieprzecinających (n)", n, limit,
                                f"Catalan({n}) = {liczba_catalana(n):,} podziałów")


def wylicz_podzialy_nieprzecinajace(n: int) -> List[PodzialNieprzecinajacy]:
    _sprawdz_ograniczenie(n)
    return [PodzialNieprzecinajacy(tuple(tuple(x + 1 for x in blok) for blok in podzial))
            for podzial in _podzialy_wzgledne(n)]


def momenty_z_wolnych_kumulant(kumulanty: Sequence[float], n: int) -> float:
    """m_n = Σ_{π ∈ NC(n)} Π_{B ∈ π} κ_{|B|}; kumulanty[0] to κ_1."""
    _sprawdz_ograniczenie(n)
    if len(kumulanty) < n:
        raise BladZakresu(f"Potrzeba kumulant rzędów 1..{n}, podano {len(kumulanty)}")
    dokladne = [Fraction(k) for k in kumulanty]
    suma = Fraction(0)
    for podzial in _podzialy_wzgledne(n):
        skladnik = Fraction(1)
        for blok in podzial:
            skladnik *= dokladne[len(blok) - 1]
            if skladnik == 0:
                break
        suma += skladnik
    return float(suma)


def moment_wolnego_poissona(intensywnosc: float, n: int, wycentrowany: bool = False) -> float:
    """Moment rozkładu P(λ): wszystkie wolne kumulanty równe λ (κ_1 = 0 po scentrowaniu)."""
    if intensywnosc <= 0:
        raise BladZakresu(f"Intensywność λ musi być dodatnia, otrzymano: {intensywnosc}")
    kumulanty = [intensywnosc] * n
    if wycentrowany and n:
        kumulanty[0] = 0.0
    return momenty_z_wolnych_kumulant(kumulanty, n)
