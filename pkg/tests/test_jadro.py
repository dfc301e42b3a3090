import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from pytest import approx, mark, raises

from rachunek.bledy import BladZakresu, NiezgodnoscSiatek, PrzekroczonyLimit
from rachunek.jadro import (Jadro, Siatka, czy_lustrzanie_symetryczne, czy_symetryczne,
                            indykator_prostopadlosciany, iloczyn_skalarny, jadro_do_json, jadro_z_json,
                            losowe_jadro_symetryczne, norma_lp, permutuj, probkuj_w_srodkach,
                            sprzezenie, symetryzuj, unormuj, wczytaj_jadro, zagesc, zapisz_jadro,
                            zloz_permutacje)


@mark.parametrize("T N".split(), ((0.0, 4), (-1.0, 4), (math.inf, 4), (1.0, 0), (1.0, 2.5)))
def test_siatka_odrzuca_zle_parametry(T, N):
    with raises(BladZakresu):
        Siatka(T, N)


def test_jadro_odrzuca_zly_ksztalt(siatka):
    with raises(NiezgodnoscSiatek):
        Jadro(siatka, np.ones((4, 3)))


def test_jadro_odrzuca_nan(siatka):
    with raises(BladZakresu):
        Jadro(siatka, [1.0, np.nan, 0.0, 0.0])


def test_norma_indykatora_to_pierwiastek_objetosci():
    siatka = Siatka(2.0, 4)
    f = indykator_prostopadlosciany(siatka, [[(0.0, 1.0), (0.5, 2.0)]])
    assert f.norma() == approx(math.sqrt(1.0 * 1.5))


def test_indykator_pozadanej_wspolrzednej_poza_siatka():
    siatka = Siatka(1.0, 4)
    with raises(BladZakresu, match="współrzędna 2"):
        indykator_prostopadlosciany(siatka, [[(0.0, 0.5), (0.0, 0.3)]])


def test_indykator_pustej_listy_wymaga_rzedu(siatka):
    with raises(BladZakresu):
        indykator_prostopadlosciany(siatka, [])
    assert indykator_prostopadlosciany(siatka, [], rzad=2).czy_zerowe()


def test_rzadki_magazyn_dla_malego_nosnika():
    siatka = Siatka(1.0, 10)
    f = indykator_prostopadlosciany(siatka, [[(0.0, 0.1), (0.0, 0.1)]])
    assert f.magazyn == 'sparse'
    assert indykator_prostopadlosciany(siatka, [[(0.0, 1.0), (0.0, 1.0)]]).magazyn == 'dense'


def test_probkowanie_w_srodkach(siatka):
    f = probkuj_w_srodkach(siatka, lambda x, y: x + 2 * y, 2)
    srodki = siatka.srodki()
    assert f.wartosci[1, 3] == approx(srodki[1] + 2 * srodki[3])


def test_sprzezenie_odwraca_argumenty(rng, siatka):
    f = Jadro(siatka, rng.normal(size=(4, 4, 4)))
    assert sprzezenie(f).wartosci[0, 1, 2] == f.wartosci[2, 1, 0]
    assert np.array_equal(sprzezenie(sprzezenie(f)).wartosci, f.wartosci)


def test_permutacja_i_zlozenie(rng, siatka):
    f = Jadro(siatka, rng.normal(size=(4, 4, 4)))
    sigma, tau = (1, 2, 0), (2, 0, 1)
    assert permutuj(f, sigma).wartosci[0, 1, 3] == f.wartosci[1, 3, 0]
    zlozone = permutuj(permutuj(f, sigma), tau)
    assert np.allclose(zlozone.wartosci, permutuj(f, zloz_permutacje(sigma, tau)).wartosci)


def test_permutacja_zlej_dlugosci(siatka):
    with raises(BladZakresu):
        permutuj(Jadro(siatka, np.zeros((4, 4))), (0, 1, 2))


def test_symetryzacja_daje_jadro_symetryczne(rng, siatka):
    f = Jadro(siatka, rng.normal(size=(4, 4, 4)))
    assert not czy_symetryczne(f)
    assert czy_symetryczne(symetryzuj(f))


def test_symetryzacja_ponad_limit():
    siatka = Siatka(1.0, 1)
    with raises(PrzekroczonyLimit):
        symetryzuj(Jadro(siatka, np.ones((1,) * 9)))


def test_lustrzana_symetria_nie_pociaga_pelnej():
    siatka = Siatka(2.0, 2)
    f = indykator_prostopadlosciany(siatka, [[(0.0, 1.0), (0.0, 2.0), (0.0, 1.0)]])
    assert czy_lustrzanie_symetryczne(f)
    assert not czy_symetryczne(f)


def test_limit_pamieci_ze_srodowiska(monkeypatch, rng):
    monkeypatch.setenv("FCHAOS_MAX_TENSOR_ENTRIES", "100")
    with raises(PrzekroczonyLimit) as blad:
        losowe_jadro_symetryczne(Siatka(1.0, 5), 3, rng)
    assert blad.value.wymagane == 125
    assert blad.value.limit == 100
    assert "1,000 bajtów" in str(blad.value)
    assert "sparse" in str(blad.value)


def test_norma_l4_stalej():
    siatka = Siatka(1.0, 4)
    f = Jadro(siatka, np.full((4, 4), 2.0))
    assert norma_lp(f, 4) == approx(2.0)
    with raises(BladZakresu):
        norma_lp(f, 0)


def test_zageszczenie_zachowuje_iloczyn_skalarny(rng, siatka):
    f = losowe_jadro_symetryczne(siatka, 2, rng)
    g = losowe_jadro_symetryczne(siatka, 2, rng)
    assert iloczyn_skalarny(zagesc(f, 3), zagesc(g, 3)) == approx(iloczyn_skalarny(f, g))


def test_unormuj_zerowego(siatka):
    with raises(BladZakresu):
        unormuj(Jadro(siatka, np.zeros(4)))


def test_json_odtwarza_jadro_bit_w_bit(rng, tmp_path):
    siatka = Siatka(1.5, 3)
    f = losowe_jadro_symetryczne(siatka, 2, rng)
    g = jadro_z_json(jadro_do_json(f))
    assert np.array_equal(f.wartosci, g.wartosci)
    zapisz_jadro(f, tmp_path / "f.json")
    assert np.array_equal(wczytaj_jadro(tmp_path / "f.json").wartosci, f.wartosci)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=3), st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_losowe_jadro_jest_symetryczne(rzad, ziarno):
    f = losowe_jadro_symetryczne(Siatka(1.0, 3), rzad, np.random.default_rng(ziarno))
    assert czy_symetryczne(f)
    assert czy_lustrzanie_symetryczne(f)


@settings(max_examples=30, deadline=None)
@given(st.data(), st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_permutacja_zachowuje_normy_l2_i_l4(dane, ziarno):
    rzad = dane.draw(st.integers(min_value=1, max_value=4))
    sigma = dane.draw(st.permutations(range(rzad)))
    f = Jadro(Siatka(2.0, 3), np.random.default_rng(ziarno).normal(size=(3,) * rzad))
    f_sigma = permutuj(f, sigma)
    assert norma_lp(f_sigma, 2) == approx(norma_lp(f, 2), rel=1e-12)
    assert norma_lp(f_sigma, 4) == approx(norma_lp(f, 4), rel=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=4), st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_symetryzacja_nie_zwieksza_normy(rzad, ziarno):
    f = Jadro(Siatka(1.0, 3), np.random.default_rng(ziarno).normal(size=(3,) * rzad))
    f_sym = symetryzuj(f)
    assert czy_symetryczne(f_sym)
    assert f_sym.norma() <= f.norma() * (1 + 1e-12)
