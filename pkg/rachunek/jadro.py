import itertools
import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Optional, Sequence, Tuple, Union

import numpy as np

from rachunek.bledy import BladZakresu, NiezgodnoscSiatek, PrzekroczonyLimit
from rachunek.konfiguracja import ZMIENNA_LIMITU, pobierz_ustawienia

logger = logging.getLogger('fchaos.rachunek')

Przedzial = Tuple[float, float]
Prostopadloscian = Sequence[Przedzial]

MAGAZYNY = ('dense', 'sparse')


@dataclass(frozen=True)
class Siatka:
    """Jednorodna siatka N komórek na przedziale [0, T]."""
    horyzont: float
    komorki: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.horyzont) and self.horyzont > 0):
            raise BladZakresu(f"Horyzont T musi być dodatni i skończony, otrzymano: {self.horyzont}")
        if isinstance(self.komorki, bool) or int(self.komorki) != self.komorki or self.komorki < 1:
            raise BladZakresu(f"Liczba komórek N musi być dodatnią liczbą całkowitą, otrzymano: {self.komorki}")
        object.__setattr__(self, 'horyzont', float(self.horyzont))
        object.__setattr__(self, 'komorki', int(self.komorki))

    @property
    def szerokosc(self) -> float:
        return self.horyzont / self.komorki

    def srodki(self) -> np.ndarray:
        return (np.arange(self.komorki) + 0.5) * self.szerokosc

    def indeks_linii(self, x: float, opis: str) -> int:
        k = int(round(x / self.szerokosc))
        if not (0 <= k <= self.komorki) or abs(k * self.szerokosc - x) > 1e-9 * max(1.0, abs(x)):
            raise BladZakresu(
                f"{opis} = {x} nie leży na linii siatki (h = {self.szerokosc}, T = {self.horyzont})")
        return k

    def __str__(self) -> str:
        return f"Siatka(T={self.horyzont}, N={self.komorki})"


def sprawdz_rozmiar(siatka: Siatka, rzad: int, opis: str) -> None:
    limit = pobierz_ustawienia().maks_elementow_tensora
    wymagane = siatka.komorki ** rzad
    if wymagane > limit:
        logger.debug(f"Odrzucono {opis}: {wymagane:,} elementów > {limit:,}")
        raise PrzekroczonyLimit(
            opis, wymagane, limit,
            f"gęsta tablica float64 rzędu {rzad} na siatce N={siatka.komorki} to {8 * wymagane:,} bajtów, "
            f"również dla magazynu 'sparse'; limit ustawia {ZMIENNA_LIMITU}")


class Jadro:
    """Funkcja stała na komórkach siatki, f: [0,T]^n -> R, zapisana jako tensor N^n."""

    def __init__(self, siatka: Siatka, wartosci, magazyn: Optional[str] = None) -> None:
        tablica = np.array(wartosci, dtype=float)
        if any(d != siatka.komorki for d in tablica.shape):
            raise NiezgodnoscSiatek(f"Kształt {tablica.shape} nie pasuje do siatki N={siatka.komorki}")
        if not np.all(np.isfinite(tablica)):
            raise BladZakresu("Jądro zawiera wartości nieskończone lub NaN")
        tablica.setflags(write=False)
        self.siatka = siatka
        self.wartosci = tablica
        if magazyn is None:
            magazyn = self._dobierz_magazyn()
        if magazyn not in MAGAZYNY:
            raise BladZakresu(f"Nieznany sposób przechowywania: {magazyn}")
        self.magazyn = magazyn

    def _dobierz_magazyn(self) -> str:
        if self.rzad == 0:
            return 'dense'
        niezerowe = np.count_nonzero(self.wartosci)
        if niezerowe <= pobierz_ustawienia().prog_rzadkosci * self.wartosci.size:
            return 'sparse'
        return 'dense'

    @property
    def rzad(self) -> int:
        return self.wartosci.ndim

    @property
    def waga(self) -> float:
        """Objętość jednej komórki, h^n."""
        return self.siatka.szerokosc ** self.rzad

    def norma(self) -> float:
        return math.sqrt(max(iloczyn_skalarny(self, self), 0.0))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.wartosci))) if self.wartosci.size else 0.0

    def czy_zerowe(self, tolerancja: Optional[float] = None) -> bool:
        if tolerancja is None:
            tolerancja = pobierz_ustawienia().tolerancja_zera
        return self.max_abs() <= tolerancja * max(1.0, self.max_abs())

    def jako_skalar(self) -> float:
        if self.rzad != 0:
            raise BladZakresu(f"Jądro rzędu {self.rzad} nie jest skalarem")
        return float(self.wartosci)

    def __add__(self, inne: 'Jadro') -> 'Jadro':
        sprawdz_zgodnosc(self, inne, ten_sam_rzad=True)
        return Jadro(self.siatka, self.wartosci + inne.wartosci)

    def __sub__(self, inne: 'Jadro') -> 'Jadro':
        sprawdz_zgodnosc(self, inne, ten_sam_rzad=True)
        return Jadro(self.siatka, self.wartosci - inne.wartosci)

    def __neg__(self) -> 'Jadro':
        return Jadro(self.siatka, -self.wartosci, magazyn=self.magazyn)

    def __mul__(self, liczba: float) -> 'Jadro':
        if isinstance(liczba, Jadro):
            return NotImplemented
        return Jadro(self.siatka, float(liczba) * self.wartosci)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return (f"Jadro(rzad={self.rzad}, N={self.siatka.komorki}, T={self.siatka.horyzont}, "
                f"magazyn={self.magazyn})")


def sprawdz_zgodnosc(f: Jadro, g: Jadro, ten_sam_rzad: bool = False) -> None:
    if f.siatka != g.siatka:
        raise NiezgodnoscSiatek(f"Różne siatki: {f.siatka} i {g.siatka}")
    if ten_sam_rzad and f.rzad != g.rzad:
        raise NiezgodnoscSiatek(f"Różne rzędy jąder: {f.rzad} i {g.rzad}")


def jadro_zerowe(siatka: Siatka, rzad: int) -> Jadro:
    sprawdz_rozmiar(siatka, rzad, "jądro zerowe")
    return Jadro(siatka, np.zeros((siatka.komorki,) * rzad), magazyn='sparse' if rzad else 'dense')


def jadro_skalarne(siatka: Siatka, wartosc: float) -> Jadro:
    return Jadro(siatka, np.array(float(wartosc)))


def indykator_prostopadlosciany(siatka: Siatka, pudelka: Sequence[Prostopadloscian],
                                wspolczynnik: float = 1.0, rzad: Optional[int] = None) -> Jadro:
    """Jądro równe `wspolczynnik` na sumie prostopadłościanów (końce w jednostkach czasu)."""
    pudelka = [list(pudelko) for pudelko in pudelka]
    if not pudelka:
        if rzad is None:
            raise BladZakresu("Pusta lista prostopadłościanów wymaga podania rzędu")
        return jadro_zerowe(siatka, rzad)

    rzedy = {len(pudelko) for pudelko in pudelka}
    if len(rzedy) != 1 or (rzad is not None and rzad not in rzedy):
        raise BladZakresu(f"Prostopadłościany mają niezgodne wymiary: {sorted(rzedy)}")
    n = rzedy.pop()
    sprawdz_rozmiar(siatka, n, "indykator prostopadłościanów")

    maska = np.zeros((siatka.komorki,) * n, dtype=bool)
    for nr, pudelko in enumerate(pudelka):
        wycinki = []
        for wspolrzedna, (a, b) in enumerate(pudelko, start=1):
            poczatek = siatka.indeks_linii(a, f"pudełko {nr}, współrzędna {wspolrzedna}, początek")
            koniec = siatka.indeks_linii(b, f"pudełko {nr}, współrzędna {wspolrzedna}, koniec")
            if koniec < poczatek:
                raise BladZakresu(f"Pudełko {nr}, współrzędna {wspolrzedna}: koniec {b} < początek {a}")
            wycinki.append(slice(poczatek, koniec))
        maska[tuple(wycinki)] = True
    return Jadro(siatka, np.where(maska, float(wspolczynnik), 0.0))


def probkuj_w_srodkach(siatka: Siatka, funkcja: Callable[..., np.ndarray], rzad: int) -> Jadro:
    """Próbkowanie funkcji w środkach komórek (błąd kwadratury O(h^2))."""
    sprawdz_rozmiar(siatka, rzad, "próbkowanie w środkach")
    if rzad == 0:
        return jadro_skalarne(siatka, funkcja())
    srodki = siatka.srodki()
    osie = np.meshgrid(*([srodki] * rzad), indexing='ij')
    wartosci = np.broadcast_to(np.asarray(funkcja(*osie), dtype=float), (siatka.komorki,) * rzad)
    return Jadro(siatka, wartosci)


def iloczyn_skalarny(f: Jadro, g: Jadro) -> float:
    sprawdz_zgodnosc(f, g, ten_sam_rzad=True)
    # np.sum sumuje parami
    return float(np.sum(f.wartosci * g.wartosci) * f.waga)


def norma_lp(f: Jadro, p: int) -> float:
    if isinstance(p, bool) or int(p) != p or p < 1:
        raise BladZakresu(f"Wykładnik normy musi być liczbą całkowitą >= 1, otrzymano: {p}")
    if p == 2:
        return f.norma()
    return float(np.sum(np.abs(f.wartosci) ** p) * f.waga) ** (1.0 / p)


def sprzezenie(f: Jadro) -> Jadro:
    """f*(t1..tn) = f(tn..t1); skalary rzeczywiste, bez sprzężenia zespolonego."""
    odwrocone = tuple(reversed(range(f.rzad)))
    return Jadro(f.siatka, np.transpose(f.wartosci, odwrocone), magazyn=f.magazyn)


def _sprawdz_permutacje(sigma: Sequence[int], n: int) -> Tuple[int, ...]:
    sigma = tuple(int(s) for s in sigma)
    if sorted(sigma) != list(range(n)):
        raise BladZakresu(f"σ = {sigma} nie jest permutacją {n} argumentów (numeracja od 0)")
    return sigma


def permutuj(f: Jadro, sigma: Sequence[int]) -> Jadro:
    """f^(σ)(x_0..x_{n-1}) = f(x_σ(0), ..., x_σ(n-1)).

    Złożenie: permutuj(permutuj(f, σ), τ) == permutuj(f, zloz_permutacje(σ, τ)).
    """
    sigma = _sprawdz_permutacje(sigma, f.rzad)
    return Jadro(f.siatka, np.transpose(f.wartosci, np.argsort(sigma)), magazyn=f.magazyn)


def zloz_permutacje(sigma: Sequence[int], tau: Sequence[int]) -> Tuple[int, ...]:
    return tuple(int(tau[s]) for s in sigma)


def symetryzuj(f: Jadro) -> Jadro:
    limit = pobierz_ustawienia().limit_symetryzacji
    if f.rzad > limit:
        raise PrzekroczonyLimit("symetryzacja (rząd jądra)", f.rzad, limit,
                                f"{math.factorial(f.rzad):,} permutacji")
    if f.rzad < 2:
        return f
    suma = np.zeros_like(f.wartosci)
    for permutacja in itertools.permutations(range(f.rzad)):
        suma += np.transpose(f.wartosci, permutacja)
    return Jadro(f.siatka, suma / math.factorial(f.rzad))


def _odleglosc_wzgledna(f: Jadro, roznica: np.ndarray) -> float:
    norma_roznicy = math.sqrt(float(np.sum(roznica * roznica)) * f.waga)
    return norma_roznicy / max(1.0, f.norma())


def czy_lustrzanie_symetryczne(f: Jadro, tolerancja: Optional[float] = None) -> bool:
    if tolerancja is None:
        tolerancja = pobierz_ustawienia().tolerancja_dokladna
    return _odleglosc_wzgledna(f, f.wartosci - sprzezenie(f).wartosci) <= tolerancja


def czy_symetryczne(f: Jadro, tolerancja: Optional[float] = None) -> bool:
    if tolerancja is None:
        tolerancja = pobierz_ustawienia().tolerancja_dokladna
    # Transpozycje sąsiednich osi generują całą grupę symetryczną
    for os_ in range(f.rzad - 1):
        roznica = f.wartosci - np.swapaxes(f.wartosci, os_, os_ + 1)
        if _odleglosc_wzgledna(f, roznica) > tolerancja:
            return False
    return True


def iloczyn_tensorowy(f: Jadro, g: Jadro) -> Jadro:
    sprawdz_zgodnosc(f, g)
    sprawdz_rozmiar(f.siatka, f.rzad + g.rzad, "iloczyn tensorowy")
    return Jadro(f.siatka, np.multiply.outer(f.wartosci, g.wartosci))


def zagesc(f: Jadro, czynnik: int = 2) -> Jadro:
    """To samo jądro na siatce N*czynnik (każda komórka dzielona na czynnik^n części)."""
    if int(czynnik) != czynnik or czynnik < 1:
        raise BladZakresu(f"Czynnik zagęszczenia musi być dodatnią liczbą całkowitą, otrzymano: {czynnik}")
    nowa = Siatka(f.siatka.horyzont, f.siatka.komorki * int(czynnik))
    sprawdz_rozmiar(nowa, f.rzad, "zagęszczenie siatki")
    wartosci = f.wartosci
    for os_ in range(f.rzad):
        wartosci = np.repeat(wartosci, int(czynnik), axis=os_)
    return Jadro(nowa, wartosci)


def jadro_do_slownika(f: Jadro) -> Dict:
    slownik = {
        "T": f.siatka.horyzont,
        "N": f.siatka.komorki,
        "order": f.rzad,
        "storage": f.magazyn,
    }
    if f.magazyn == 'sparse':
        slownik["values"] = [[[int(i) for i in indeks], float(f.wartosci[tuple(indeks)])]
                             for indeks in np.argwhere(f.wartosci != 0)]
    else:
        # Kolejność wierszowa: pierwszy indeks zmienia się najwolniej
        slownik["values"] = [float(x) for x in f.wartosci.ravel(order='C')]
    return slownik


def jadro_ze_slownika(slownik: Dict) -> Jadro:
    brakujace = [k for k in ("T", "N", "order", "storage", "values") if k not in slownik]
    if brakujace:
        raise BladZakresu(f"Brak pól w opisie jądra: {brakujace}")
    siatka = Siatka(slownik["T"], slownik["N"])
    n = int(slownik["order"])
    magazyn = slownik["storage"]
    ksztalt = (siatka.komorki,) * n
    if magazyn == 'sparse':
        wartosci = np.zeros(ksztalt)
        for indeks, wartosc in slownik["values"]:
            if len(indeks) != n:
                raise BladZakresu(f"Indeks {indeks} nie ma długości {n}")
            wartosci[tuple(indeks)] = wartosc
    elif magazyn == 'dense':
        wartosci = np.asarray(slownik["values"], dtype=float)
        if wartosci.size != siatka.komorki ** n:
            raise BladZakresu(f"Oczekiwano {siatka.komorki ** n} wartości, otrzymano {wartosci.size}")
        wartosci = wartosci.reshape(ksztalt)
    else:
        raise BladZakresu(f"Nieznany sposób przechowywania: {magazyn}")
    return Jadro(siatka, wartosci, magazyn=magazyn)


def jadro_do_json(f: Jadro) -> str:
    # repr floatów w json jest najkrótszym zapisem odtwarzającym bit w bit
    return json.dumps(jadro_do_slownika(f))


def jadro_z_json(tekst: str) -> Jadro:
    return jadro_ze_slownika(json.loads(tekst))


def zapisz_jadro(f: Jadro, sciezka: Union[str, Path]) -> None:
    Path(sciezka).write_text(jadro_do_json(f), encoding='utf-8')


def wczytaj_jadro(sciezka: Union[str, Path]) -> Jadro:
    return jadro_z_json(Path(sciezka).read_text(encoding='utf-8'))


def losowe_jadro_symetryczne(siatka: Siatka, rzad: int, rng: np.random.Generator,
                              nosnik: Optional[Sequence[int]] = None,
                              nieujemne: bool = False) -> Jadro:
    """Losowe jądro symetryczne, opcjonalnie o nośniku w wybranych komórkach (każda współrzędna)."""
    sprawdz_rozmiar(siatka, rzad, "losowe jądro")
    wartosci = rng.random((siatka.komorki,) * rzad) if nieujemne else rng.normal(size=(siatka.komorki,) * rzad)
    if nosnik is not None:
        maska_osi = np.zeros(siatka.komorki, dtype=bool)
        maska_osi[list(nosnik)] = True
        maska = np.ones((siatka.komorki,) * rzad, dtype=bool)
        for os_ in range(rzad):
            ksztalt = [1] * rzad
            ksztalt[os_] = siatka.komorki
            maska = maska & maska_osi.reshape(ksztalt)
        wartosci = np.where(maska, wartosci, 0.0)
    return symetryzuj(Jadro(siatka, wartosci))


def unormuj(f: Jadro) -> Jadro:
    norma = f.norma()
    if norma == 0.0:
        raise BladZakresu("Nie można unormować jądra zerowego")
    return (1.0 / norma) * f
