import logging
from typing import Sequence, Tuple

import numpy as np

from rachunek.bledy import BladSymetrii, BladZakresu, NiezgodnoscSiatek
from rachunek.chaos import (ElementChaosu, Rodzaj, kowariancja, moment, phi, phi_iloczynu, pomnoz,
                            przesun_w_czasie)
from rachunek.konfiguracja import pobierz_ustawienia

logger = logging.getLogger('fchaos.wolnosc')


def _sprawdz_wektor(rodzaj: Rodzaj, skladowe: Sequence[ElementChaosu]) -> None:
    if not skladowe:
        raise BladZakresu("Wektor musi mieć co najmniej jedną składową")
    for i, F in enumerate(skladowe):
        if F.rodzaj is not rodzaj:
            raise NiezgodnoscSiatek(f"Składowa {i} jest rodzaju {F.rodzaj.value}, oczekiwano {rodzaj.value}")
        if F.siatka != skladowe[0].siatka:
            raise NiezgodnoscSiatek(f"Składowa {i} leży na innej siatce")
        if not F.czy_samosprzezony():
            raise BladSymetrii(f"Składowa {i} nie jest samosprzężona (części nie są lustrzanie symetryczne)")


def _suma_kwadratow(skladowe: Sequence[ElementChaosu]) -> ElementChaosu:
    wynik = pomnoz(skladowe[0], skladowe[0])
    for F in skladowe[1:]:
        wynik = wynik + pomnoz(F, F)
    return wynik


def czwarty_moment_normy(rodzaj: Rodzaj, skladowe: Sequence[ElementChaosu]) -> float:
    """φ(||F||⁴) = Σ_{i,j} φ(F_i² F_j²) dla normy euklidesowej w R^d."""
    _sprawdz_wektor(rodzaj, skladowe)
    kwadraty = [pomnoz(F, F) for F in skladowe]
    return sum(phi_iloczynu(A, B) for A in kwadraty for B in kwadraty)


def macierz_kowariancji(skladowe: Sequence[ElementChaosu]) -> np.ndarray:
    d = len(skladowe)
    C = np.zeros((d, d))
    for i in range(d):
        for j in range(d):
            C[i, j] = kowariancja(skladowe[i], skladowe[j])
    return C


def docelowy_czwarty_moment_normy(C: np.ndarray) -> float:
    """Σ_{i,j} (c(i,i)c(j,j) + c(i,j)²): φ(||s||⁴) wektora półkolistego o kowariancji C."""
    C = np.asarray(C, dtype=float)
    return float(np.trace(C) ** 2 + np.sum(C * C))


def kowariancja_norm_kopii(F: Sequence[ElementChaosu],
                           G: Sequence[ElementChaosu]) -> Tuple[float, float]:
    """Obie strony tożsamości ½Cov(||F+G||², ||F-G||²) = φ(||F||⁴) - φ(||F||²)² - Σ Cov(F_i,F_j)².

    G ma być wolną kopią F (np. przesunięciem w czasie); składowe scentrowane.
    """
    if len(F) != len(G):
        raise BladZakresu(f"Wektory mają różne wymiary: {len(F)} i {len(G)}")
    tol = pobierz_ustawienia().tolerancja_dokladna
    for i, X in enumerate(list(F) + list(G)):
        if abs(phi(X)) > tol:
            raise BladZakresu(f"Składowa {i} nie jest scentrowana: φ = {phi(X)}")

    sumy = [Fi + Gi for Fi, Gi in zip(F, G)]
    roznice = [Fi - Gi for Fi, Gi in zip(F, G)]
    kw_sumy, kw_roznicy = _suma_kwadratow(sumy), _suma_kwadratow(roznice)
    lewa = 0.5 * (phi_iloczynu(kw_sumy, kw_roznicy) - phi(kw_sumy) * phi(kw_roznicy))

    kw_normy = _suma_kwadratow(F)
    C = macierz_kowariancji(F)
    prawa = phi_iloczynu(kw_normy, kw_normy) - phi(kw_normy) ** 2 - float(np.sum(C * C))
    return lewa, prawa


def tozsamosc_czwartego_momentu(X: ElementChaosu, przesuniecie: int) -> Tuple[float, float]:
    """Cov((F+G)², (F-G)²) i 2(φ(F⁴) - 2φ(F²)²) dla G = F przesuniętego o `przesuniecie` komórek.

    Przy φ(F²) = 1 prawa strona to 2(φ(F⁴) - 2).
    """
    if abs(phi(X)) > pobierz_ustawienia().tolerancja_dokladna:
        raise BladZakresu(f"Element musi być scentrowany, φ(X) = {phi(X)}")
    G = przesun_w_czasie(X, przesuniecie)
    S, D = X + G, X - G
    lewa = kowariancja(pomnoz(S, S), pomnoz(D, D))
    prawa = 2.0 * (moment(X, 4) - 2.0 * moment(X, 2) ** 2)
    return lewa, prawa
