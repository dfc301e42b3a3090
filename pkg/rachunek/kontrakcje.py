import logging
from typing import Dict

import numpy as np

from rachunek.bledy import BladZakresu
from rachunek.jadro import Jadro, iloczyn_tensorowy, sprawdz_rozmiar, sprawdz_zgodnosc

logger = logging.getLogger('fchaos.rachunek')


def kontrakcja_zagniezdzona(f: Jadro, g: Jadro, p: int) -> Jadro:
    """f ⌢_p g: ostatnie p argumentów f całkowane z pierwszymi p argumentami g w odwrotnej kolejności.

    (f ⌢_p g)(t, u) = ∫ f(t_1..t_{n-p}, s_1..s_p) g(s_p..s_1, u_1..u_{m-p}) ds
    """
    sprawdz_zgodnosc(f, g)
    n, m = f.rzad, g.rzad
    if not (0 <= p <= min(n, m)):
        raise BladZakresu(f"Kontrakcja zagnieżdżona: p = {p} poza zakresem 0..{min(n, m)}")
    if p == 0:
        return iloczyn_tensorowy(f, g)
    sprawdz_rozmiar(f.siatka, n + m - 2 * p, f"kontrakcja ⌢_{p} rzędów ({n}, {m})")
    osie_f = list(range(n - p, n))
    osie_g = list(range(p - 1, -1, -1))
    wynik = np.tensordot(f.wartosci, g.wartosci, axes=(osie_f, osie_g))
    return Jadro(f.siatka, wynik * f.siatka.szerokosc ** p)


def kontrakcja_gwiazdkowa(f: Jadro, g: Jadro, p: int) -> Jadro:
    """f ⋆_p g: p-1 środkowych zmiennych całkowanych, jedna zmienna wspólna utożsamiona punktowo.

    (f ⋆_p g)(t, x, u) = ∫ f(t_1..t_{n-p}, x, s_1..s_{p-1}) g(s_{p-1}..s_1, x, u_1..u_{m-p}) ds
    """
    sprawdz_zgodnosc(f, g)
    n, m = f.rzad, g.rzad
    if not (1 <= p <= min(n, m)):
        raise BladZakresu(f"Kontrakcja gwiazdkowa: p = {p} poza zakresem 1..{min(n, m)}")
    sprawdz_rozmiar(f.siatka, n + m - 2 * p + 1, f"kontrakcja ⋆_{p} rzędów ({n}, {m})")

    etykiety_f = list(range(n))
    # oś i < p-1 funkcji g niesie s_{p-1-i}, czyli oś n-1-i funkcji f
    etykiety_g = [n - 1 - i for i in range(p - 1)] + [n - p] + list(range(n, n + m - p))
    etykiety_wyniku = list(range(n - p + 1)) + list(range(n, n + m - p))
    wynik = np.einsum(f.wartosci, etykiety_f, g.wartosci, etykiety_g, etykiety_wyniku, optimize=True)
    return Jadro(f.siatka, wynik * f.siatka.szerokosc ** (p - 1))


def normy_kontrakcji(f: Jadro, g: Jadro, gwiazdkowe: bool = False) -> Dict[str, float]:
    """Normy L2 wszystkich kontrakcji ⌢_p (p >= 1) oraz, na życzenie, ⋆_p."""
    normy = {}
    for p in range(1, min(f.rzad, g.rzad) + 1):
        normy[f"nested_{p}"] = kontrakcja_zagniezdzona(f, g, p).norma()
        if gwiazdkowe:
            normy[f"star_{p}"] = kontrakcja_gwiazdkowa(f, g, p).norma()
    logger.debug(f"Normy kontrakcji rzędów ({f.rzad}, {g.rzad}): {normy}")
    return normy
