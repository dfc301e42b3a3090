import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from pytest import approx, mark, raises

from rachunek.bichaos import (BiJadro, ElementBiChaosu, bicalka, bijadro_do_json, bijadro_z_jadra,
                              bijadro_z_json, bikontrakcja, bisprzezenie, gradient_w_komorce,
                              iloczyn_gradientow, iloczyn_gradientow_komorkowo, norma_phi2_kwadrat,
                              pomnoz_krzyzykowo)
from rachunek.bledy import BladSymetrii, BladZakresu
from rachunek.jadro import Jadro, Siatka, iloczyn_skalarny, losowe_jadro_symetryczne
from rachunek.kontrakcje import kontrakcja_zagniezdzona


def _roznica(A, B):
    return norma_phi2_kwadrat(A - B)


def test_bijadro_zly_podzial(siatka):
    with raises(BladZakresu):
        BiJadro(siatka, 1, 2, np.zeros((4, 4)))


def test_bijadro_z_jadra(rng, siatka):
    f = Jadro(siatka, rng.normal(size=(4, 4, 4)))
    b = bijadro_z_jadra(f, 1)
    assert b.podzial == (1, 2)
    assert b.norma() == approx(f.norma())
    with raises(BladZakresu):
        bijadro_z_jadra(f, 4)


def test_skalar_wchlania_podzial_zerowy(siatka):
    A = ElementBiChaosu(siatka, 1.0, {(0, 0): BiJadro(siatka, 0, 0, np.array(2.0))})
    assert A.skalar == 3.0 and not A.czesci


def test_bisprzezenie_jest_inwolucja(rng, siatka):
    A = bicalka(BiJadro(siatka, 2, 1, rng.normal(size=(4, 4, 4))))
    B = bisprzezenie(bisprzezenie(A))
    assert np.array_equal(B.czesci[(2, 1)].wartosci, A.czesci[(2, 1)].wartosci)
    C = bisprzezenie(A)
    assert C.czesci[(2, 1)].wartosci[0, 1, 3] == A.czesci[(2, 1)].wartosci[1, 0, 3]


def test_bikontrakcja_skladowych_prostych(rng, siatka):
    h = siatka.szerokosc
    a, b, c, d = (rng.normal(size=4) for _ in range(4))
    f = BiJadro(siatka, 1, 1, np.multiply.outer(a, b))
    g = BiJadro(siatka, 1, 1, np.multiply.outer(c, d))
    # (a ⊗ b) ♯ (c ⊗ d) = (a c) ⊗ (d b)
    wynik = bikontrakcja(f, g, 1, 1)
    assert wynik.podzial == (0, 0)
    assert float(wynik.wartosci) == approx(float(a @ c) * h * float(d @ b) * h)
    lewa = bikontrakcja(f, g, 1, 0)
    assert lewa.podzial == (0, 2)
    assert np.allclose(lewa.wartosci, float(a @ c) * h * np.multiply.outer(d, b))


def test_bikontrakcja_poza_zakresem(siatka):
    f = BiJadro(siatka, 1, 1, np.ones((4, 4)))
    with raises(BladZakresu):
        bikontrakcja(f, f, 2, 0)


def test_iloczyn_krzyzykowy_jest_laczny(rng, siatka):
    A, B, C = (bicalka(BiJadro(siatka, 1, 1, rng.normal(size=(4, 4)))) for _ in range(3))
    lewy = pomnoz_krzyzykowo(pomnoz_krzyzykowo(A, B), C)
    prawy = pomnoz_krzyzykowo(A, pomnoz_krzyzykowo(B, C))
    assert _roznica(lewy, prawy) <= 1e-20 * max(1.0, norma_phi2_kwadrat(lewy))


def test_gradient_poza_siatka(siatka):
    with raises(BladZakresu):
        gradient_w_komorce(Jadro(siatka, np.ones(4)), 4)


def test_gradienty_pierwszego_rzedu_to_iloczyn_skalarny(rng, siatka):
    f, g = Jadro(siatka, rng.normal(size=4)), Jadro(siatka, rng.normal(size=4))
    A = iloczyn_gradientow(f, g)
    assert A.skalar == approx(iloczyn_skalarny(f, g))
    assert not A.czesci
    assert norma_phi2_kwadrat(A) == approx(iloczyn_skalarny(f, g) ** 2)


def test_iloczyn_gradientow_wymaga_symetrii(rng, siatka):
    f = Jadro(siatka, rng.normal(size=(4, 4)))
    with raises(BladSymetrii):
        iloczyn_gradientow(f, f)


def test_rozlaczne_nosniki_zeruja_iloczyn_gradientow(rng):
    siatka = Siatka(1.0, 4)
    f = losowe_jadro_symetryczne(siatka, 2, rng, nosnik=range(2))
    g = losowe_jadro_symetryczne(siatka, 3, rng, nosnik=range(2, 4))
    assert norma_phi2_kwadrat(iloczyn_gradientow(f, g)) == 0.0


@mark.parametrize("n m".split(), ((1, 2), (2, 2), (2, 3), (3, 3)))
def test_dwie_drogi_iloczynu_gradientow(rng, n, m):
    siatka = Siatka(1.0, 3)
    f, g = losowe_jadro_symetryczne(siatka, n, rng), losowe_jadro_symetryczne(siatka, m, rng)
    A, B = iloczyn_gradientow(f, g), iloczyn_gradientow_komorkowo(f, g)
    assert _roznica(A, B) <= 1e-20 * max(1.0, norma_phi2_kwadrat(A))


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=1, max_value=2), st.integers(min_value=1, max_value=2),
       st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_dwie_drogi_dla_losowych_jader(n, m, ziarno):
    rng = np.random.default_rng(ziarno)
    siatka = Siatka(2.0, 3)
    f, g = losowe_jadro_symetryczne(siatka, n, rng), losowe_jadro_symetryczne(siatka, m, rng)
    assert _roznica(iloczyn_gradientow(f, g), iloczyn_gradientow_komorkowo(f, g)) == approx(0.0, abs=1e-18)


def test_json_bijadra(rng, siatka):
    f = BiJadro(siatka, 1, 2, rng.normal(size=(4, 4, 4)))
    g = bijadro_z_json(bijadro_do_json(f))
    assert g.podzial == (1, 2)
    assert np.array_equal(g.wartosci, f.wartosci)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=2, max_value=3), st.integers(min_value=2, max_value=3), st.data(),
       st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_bikontrakcja_symetrycznych_zalezy_od_sumy(n, m, dane, ziarno):
    rng = np.random.default_rng(ziarno)
    siatka = Siatka(1.0, 3)
    f, g = losowe_jadro_symetryczne(siatka, n, rng), losowe_jadro_symetryczne(siatka, m, rng)
    F = bijadro_z_jadra(f, dane.draw(st.integers(min_value=0, max_value=n)))
    G = bijadro_z_jadra(g, dane.draw(st.integers(min_value=0, max_value=m)))
    for p in range(min(F.rzad_lewy, G.rzad_lewy) + 1):
        for r in range(min(F.rzad_prawy, G.rzad_prawy) + 1):
            oczekiwana = kontrakcja_zagniezdzona(f, g, p + r).norma()
            assert bikontrakcja(F, G, p, r).norma() == approx(oczekiwana, rel=1e-10, abs=1e-12)


def test_bikontrakcja_podzialu_jeden_jeden(rng, siatka):
    f, g = losowe_jadro_symetryczne(siatka, 2, rng), losowe_jadro_symetryczne(siatka, 2, rng)
    F, G = bijadro_z_jadra(f, 1), bijadro_z_jadra(g, 1)
    lewa, prawa = bikontrakcja(F, G, 1, 0), bikontrakcja(F, G, 0, 1)
    assert lewa.podzial == (0, 2) and prawa.podzial == (2, 0)
    assert lewa.norma() == approx(prawa.norma(), rel=1e-12)
    assert lewa.norma() == approx(kontrakcja_zagniezdzona(f, g, 1).norma(), rel=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=3), st.data(), st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_pelna_bikontrakcja_to_kwadrat_normy(n, dane, ziarno):
    f = losowe_jadro_symetryczne(Siatka(2.0, 3), n, np.random.default_rng(ziarno))
    F = bijadro_z_jadra(f, dane.draw(st.integers(min_value=0, max_value=n)))
    wynik = bikontrakcja(F, F, F.rzad_lewy, F.rzad_prawy)
    assert wynik.podzial == (0, 0)
    assert float(wynik.wartosci) == approx(f.norma() ** 2, rel=1e-12)
