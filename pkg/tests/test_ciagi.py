import math

from pytest import approx, mark, raises

from eksperymenty.katalog import jadro_blokowe
from rachunek.bledy import BladZakresu, NiezgodnoscSiatek
from rachunek.chaos import Rodzaj
from rachunek.jadro import Siatka, indykator_prostopadlosciany
from wolnosc.ciagi import analizuj_ciag, zmierza_do_zera

INDEKSY = [2, 4, 8, 16]


@mark.parametrize("wartosci oczekiwane".split(), (
    ([], False),
    ([1.0, 0.5, 0.25], True),
    ([1.0, 1.0, 1.0], False),
    ([1.0, 2.0, 0.1], False),
    ([5.0, 1e-12], True),
    ([0.3], False),
))
def test_zmierza_do_zera(wartosci, oczekiwane):
    assert zmierza_do_zera(wartosci, 1e-9) is oczekiwane


def test_ciag_blokowy():
    siatka = Siatka(1.0, 16)
    fs = [jadro_blokowe(siatka, k) for k in INDEKSY]
    slad = analizuj_ciag(Rodzaj.WIGNER, fs, fs, INDEKSY, gradient=True)
    for k, norma, czwarty in zip(INDEKSY, slad.normy_zagniezdzone[1], slad.momenty["phi_F4"]):
        assert norma ** 2 == approx(1.0 / k, rel=1e-12)
        assert czwarty == approx(2.0 + 1.0 / k, rel=1e-12)
    assert slad.normy_zagniezdzone[2] == approx([1.0] * 4)
    assert slad.trendy["nested_1"] is True
    assert slad.trendy["nested_2"] is False
    assert "phi2_norm_sq_gradient" in slad.diagnostyka
    assert slad.kowariancje_kwadratow == approx(slad.kowariancje_z_rozwiniecia, rel=1e-10)


def test_ciag_z_permutacjami_i_stalym_g():
    siatka = Siatka(1.0, 16)
    fs = [jadro_blokowe(siatka, k) for k in INDEKSY]
    g = indykator_prostopadlosciany(siatka, [[(0.0, 1.0), (0.0, 1.0)]])
    slad = analizuj_ciag(Rodzaj.WIGNER, fs, [g] * 4, INDEKSY, permutacje=True)
    assert slad.momenty["phi_FG"] == approx([1.0 / math.sqrt(k) for k in INDEKSY], rel=1e-12)
    assert slad.trendy["max_norm_permuted"] is True
    assert slad.trendy["cov_squares"] is True


def test_kolumny_sladu():
    siatka = Siatka(1.0, 4)
    fs = [jadro_blokowe(siatka, k) for k in (2, 4)]
    slad = analizuj_ciag(Rodzaj.WOLNY_POISSON, fs, fs, [2, 4])
    kolumny = slad.kolumny()
    assert kolumny["k"] == [2, 4]
    assert {"norm_nested_1", "norm_nested_2", "norm_star_1", "norm_star_2", "cov_squares"} <= set(kolumny)
    assert "star_1" in slad.trendy
    assert slad.do_slownika()["trends"] == slad.trendy


def test_bledy_ciagu():
    siatka = Siatka(1.0, 4)
    f = jadro_blokowe(siatka, 2)
    with raises(BladZakresu):
        analizuj_ciag(Rodzaj.WIGNER, [], [])
    with raises(BladZakresu):
        analizuj_ciag(Rodzaj.WIGNER, [f, f], [f])
    with raises(BladZakresu):
        analizuj_ciag(Rodzaj.WOLNY_POISSON, [f], [f], gradient=True)
    with raises(NiezgodnoscSiatek):
        analizuj_ciag(Rodzaj.WIGNER, [f], [jadro_blokowe(Siatka(1.0, 2), 2)])
