from itertools import combinations

from hypothesis import given, settings
from hypothesis import strategies as st
from pytest import approx, mark, raises
from sympy.utilities.iterables import multiset_partitions

from rachunek.bledy import BladZakresu, PrzekroczonyLimit
from wyrocznie.kombinatoryka import (PodzialNieprzecinajacy, liczba_catalana, moment_polkolisty,
                                     moment_wolnego_poissona, momenty_z_wolnych_kumulant,
                                     wylicz_podzialy_nieprzecinajace)

CATALAN = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862]


def _przecina_sie(a, b):
    return any(x < y < z < w for x, z in combinations(sorted(a), 2) for y, w in combinations(sorted(b), 2)) or \
        any(x < y < z < w for x, z in combinations(sorted(b), 2) for y, w in combinations(sorted(a), 2))


def _nieprzecinajace_sympy(n):
    wynik = set()
    for podzial in multiset_partitions(list(range(1, n + 1))):
        if not any(_przecina_sie(a, b) for a, b in combinations(podzial, 2)):
            wynik.add(tuple(sorted(tuple(sorted(blok)) for blok in podzial)))
    return wynik


@mark.parametrize("k", range(len(CATALAN)))
def test_liczby_catalana(k):
    assert liczba_catalana(k) == CATALAN[k]


@mark.parametrize("n", range(0, 10))
def test_liczba_podzialow_to_catalan(n):
    assert len(wylicz_podzialy_nieprzecinajace(n)) == CATALAN[n]


@mark.parametrize("n", range(1, 8))
def test_podzialy_zgodne_z_sympy(n):
    nasze = {p.bloki for p in wylicz_podzialy_nieprzecinajace(n)}
    assert nasze == _nieprzecinajace_sympy(n)


def test_podzial_normalizuje_bloki():
    p = PodzialNieprzecinajacy(((4, 1), (3, 2)))
    assert p.bloki == ((1, 4), (2, 3))
    assert p.n == 4
    assert p.rozmiary_blokow() == [2, 2]


@mark.parametrize("bloki", (((1, 3), (2, 4)), ((1, 2), (2, 3)), ((1,), ()), ((1, 2), (4,))))
def test_niepoprawne_podzialy(bloki):
    with raises(BladZakresu):
        PodzialNieprzecinajacy(bloki)


def test_limit_wyliczania():
    with raises(PrzekroczonyLimit):
        wylicz_podzialy_nieprzecinajace(15)
    with raises(BladZakresu):
        wylicz_podzialy_nieprzecinajace(-1)


@mark.parametrize("k", range(0, 11))
def test_momenty_polkoliste_z_kumulant(k):
    kumulanty = [0.0, 1.0] + [0.0] * max(0, k - 2)
    assert momenty_z_wolnych_kumulant(kumulanty, k) == approx(moment_polkolisty(1.0, k))


def test_moment_polkolisty_skalowany():
    assert moment_polkolisty(2.0, 4) == approx(2 * 4.0)
    assert moment_polkolisty(2.0, 5) == 0.0
    with raises(BladZakresu):
        moment_polkolisty(0.0, 2)


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=0.1, max_value=5.0))
def test_momenty_wolnego_poissona(lam):
    assert moment_wolnego_poissona(lam, 1) == approx(lam)
    assert moment_wolnego_poissona(lam, 2) == approx(lam + lam ** 2)
    assert moment_wolnego_poissona(lam, 3) == approx(lam + 3 * lam ** 2 + lam ** 3)
    m3 = moment_wolnego_poissona(lam, 3, wycentrowany=True)
    m4 = moment_wolnego_poissona(lam, 4, wycentrowany=True)
    assert m4 - 2 * m3 == approx(2 * lam ** 2 - lam)


def test_za_malo_kumulant():
    with raises(BladZakresu):
        momenty_z_wolnych_kumulant([1.0], 3)
    with raises(BladZakresu):
        moment_wolnego_poissona(0.0, 2)
