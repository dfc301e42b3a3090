import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from pytest import approx, mark, raises

from rachunek.bledy import BladSymetrii, BladZakresu
from rachunek.chaos import Rodzaj
from rachunek.jadro import Jadro, Siatka, indykator_prostopadlosciany, losowe_jadro_symetryczne, probkuj_w_srodkach
from wolnosc.kryteria import (kowariancja_kwadratow, sprawdz_gradient, sprawdz_kontrakcje,
                              sprawdz_kontrakcje_permutowane, sprawdz_kowariancje,
                              sprawdz_momenty_naprzemienne, wzorce_naprzemienne)
from wolnosc.werdykty import Metoda


def _para(rng, wolna, n=2, m=2):
    siatka = Siatka(1.0, 4)
    if wolna:
        return (losowe_jadro_symetryczne(siatka, n, rng, nosnik=range(2)),
                losowe_jadro_symetryczne(siatka, m, rng, nosnik=range(2, 4)))
    return (losowe_jadro_symetryczne(siatka, n, rng, nieujemne=True),
            losowe_jadro_symetryczne(siatka, m, rng, nieujemne=True))


@mark.parametrize("rodzaj", list(Rodzaj))
@mark.parametrize("wolna", (True, False))
def test_kryteria_sa_zgodne(rng, rodzaj, wolna):
    f, g = _para(rng, wolna)
    werdykty = [sprawdz_kontrakcje(rodzaj, f, g), sprawdz_kowariancje(rodzaj, f, g),
                sprawdz_momenty_naprzemienne(rodzaj, f, g, 4)]
    if rodzaj is Rodzaj.WIGNER:
        werdykty.append(sprawdz_gradient(f, g))
    assert {w.czy_wolne for w in werdykty} == {wolna}


def test_werdykt_niesie_swiadka(rng):
    f, g = _para(rng, False)
    werdykt = sprawdz_kontrakcje(Rodzaj.WOLNY_POISSON, f, g, 1e-6)
    assert werdykt.metoda is Metoda.KONTRAKCJE
    assert set(werdykt.swiadek) == {"norm_star_1"}
    slownik = werdykt.do_slownika()
    assert slownik["method"] == "contraction" and slownik["is_free"] is False
    assert slownik["tolerance"] == 1e-6


def test_kontrakcje_odrzucaja_jadra_tylko_lustrzane():
    siatka = Siatka(2.0, 2)
    f = indykator_prostopadlosciany(siatka, [[(0.0, 1.0), (0.0, 2.0), (0.0, 1.0)]])
    with raises(BladSymetrii, match="sprawdz_kontrakcje_permutowane"):
        sprawdz_kontrakcje(Rodzaj.WIGNER, f, f)


def test_kontrakcje_permutowane_dla_kontrprzykladu():
    siatka = Siatka(2.0, 2)
    f = indykator_prostopadlosciany(siatka, [[(0.0, 1.0), (0.0, 2.0), (0.0, 1.0)]])
    g = indykator_prostopadlosciany(siatka, [[(1.0, 2.0), (0.0, 2.0), (1.0, 2.0)]])
    werdykt = sprawdz_kontrakcje_permutowane(Rodzaj.WIGNER, f, g)
    assert not werdykt.czy_wolne
    assert not werdykt.rozstrzygajacy
    assert werdykt.szczegoly["pairs_checked"] == 36


def test_kontrakcje_permutowane_rozlacznych_sa_rozstrzygajace():
    siatka = Siatka(2.0, 2)
    f = indykator_prostopadlosciany(siatka, [[(0.0, 1.0), (0.0, 1.0)]])
    g = indykator_prostopadlosciany(siatka, [[(1.0, 2.0), (1.0, 2.0)]])
    werdykt = sprawdz_kontrakcje_permutowane(Rodzaj.WOLNY_POISSON, f, g)
    assert werdykt.czy_wolne and werdykt.rozstrzygajacy


@mark.parametrize("rodzaj", list(Rodzaj))
def test_kowariancja_kwadratow_dwiema_drogami(rng, rodzaj):
    f, g = _para(rng, False, 2, 3)
    bezposrednia, z_rozwiniecia = kowariancja_kwadratow(rodzaj, f, g)
    assert bezposrednia == approx(z_rozwiniecia, rel=1e-10)
    assert bezposrednia > 0


def test_wzorce_naprzemienne():
    assert wzorce_naprzemienne(4) == [(1, 1), (1, 1, 1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1)]
    assert wzorce_naprzemienne(2) == [(1, 1)]


def test_glebokosc_ponizej_dwoch():
    siatka = Siatka(1.0, 2)
    f = Jadro(siatka, np.ones(2))
    with raises(BladZakresu):
        sprawdz_momenty_naprzemienne(Rodzaj.WIGNER, f, f, 1)


def test_zly_wzorzec():
    siatka = Siatka(1.0, 2)
    f = Jadro(siatka, np.ones(2))
    with raises(BladZakresu):
        sprawdz_momenty_naprzemienne(Rodzaj.WIGNER, f, f, 4, wzorce=[(1, 1, 1)])


def test_pominiete_wzorce_oslabiaja_werdykt(rng):
    f, g = _para(rng, True)
    werdykt = sprawdz_momenty_naprzemienne(Rodzaj.WIGNER, f, g, 6, budzet=4 ** 4)
    assert werdykt.czy_wolne
    assert werdykt.szczegoly["skipped"]
    assert not werdykt.rozstrzygajacy


def test_przyklad_transferu():
    siatka = Siatka(1.0, 256)
    f = probkuj_w_srodkach(siatka, lambda x: x, 1)
    g = probkuj_w_srodkach(siatka, lambda x: x ** 2 - 0.75 * x, 1)
    assert sprawdz_kontrakcje(Rodzaj.WIGNER, f, g, 1e-3).czy_wolne
    assert not sprawdz_kontrakcje(Rodzaj.WOLNY_POISSON, f, g, 1e-3).czy_wolne


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=1, max_value=2), st.integers(min_value=1, max_value=2),
       st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_wolnosc_poissona_pociaga_wolnosc_wignera(n, m, ziarno):
    rng = np.random.default_rng(ziarno)
    siatka = Siatka(1.0, 3)
    f, g = losowe_jadro_symetryczne(siatka, n, rng), losowe_jadro_symetryczne(siatka, m, rng)
    if sprawdz_kontrakcje(Rodzaj.WOLNY_POISSON, f, g).czy_wolne:
        assert sprawdz_kontrakcje(Rodzaj.WIGNER, f, g).czy_wolne
