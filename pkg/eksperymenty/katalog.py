"""Zarejestrowane eksperymenty; każdy zwraca Raport z wartościami, werdyktami i kontrolami."""
import logging
import math
from functools import reduce
from typing import Any, Dict, List, Tuple

import numpy as np

from eksperymenty.logowanie import loguj
from eksperymenty.raport import Kontrola, Raport
from eksperymenty.rejestr import Pole, rejestruj
from rachunek.bichaos import iloczyn_gradientow, iloczyn_gradientow_komorkowo, norma_phi2_kwadrat
from rachunek.bledy import BladKonfiguracji
from rachunek.chaos import (Rodzaj, calka, moment, phi, phi_iloczynu, potega, potegi, przesun_jadro,
                            przesun_w_czasie, roznica_momentow_poissona)
from rachunek.jadro import (Jadro, Siatka, czy_lustrzanie_symetryczne, czy_symetryczne, iloczyn_skalarny,
                            indykator_prostopadlosciany, losowe_jadro_symetryczne, probkuj_w_srodkach,
                            unormuj)
from rachunek.konfiguracja import pobierz_ustawienia
from rachunek.kontrakcje import kontrakcja_gwiazdkowa, kontrakcja_zagniezdzona, normy_kontrakcji
from wolnosc.ciagi import analizuj_ciag, zmierza_do_zera
from wolnosc.kryteria import (sprawdz_gradient, sprawdz_kontrakcje, sprawdz_kontrakcje_permutowane,
                              sprawdz_kowariancje, sprawdz_momenty_naprzemienne)
from wolnosc.wektory import (czwarty_moment_normy, docelowy_czwarty_moment_normy,
                             kowariancja_norm_kopii, macierz_kowariancji, tozsamosc_czwartego_momentu)
from wyrocznie.kombinatoryka import moment_wolnego_poissona
from wyrocznie.macierze import szacuj_momenty, szacuj_slad_naprzemienny

logger = logging.getLogger('fchaos.eksperymenty')

RODZAJE = ('wigner', 'free_poisson', 'both')
RODZINY_TRANSFERU = ('disjoint', 'orthogonal_products', 'overlapping')
# stała C w progu 3·stderr + C/d wyroczni macierzowej
STALA_OBCIAZENIA = 10.0
# największa siatka śladu z jądrem lustrzanym rzędu 3
SIATKA_LUSTRZANA = 16


def _tolerancja(konfiguracja: Dict[str, Any], probkowana: bool = False) -> float:
    if konfiguracja["tol"] is not None:
        return konfiguracja["tol"]
    ustawienia = pobierz_ustawienia()
    return ustawienia.tolerancja_probkowania if probkowana else ustawienia.tolerancja_dokladna


def _rodzaje(nazwa: str) -> List[Rodzaj]:
    if nazwa == 'both':
        return [Rodzaj.WIGNER, Rodzaj.WOLNY_POISSON]
    return [Rodzaj.z_nazwy(nazwa)]


def _rng(konfiguracja: Dict[str, Any], *strumien: int) -> np.random.Generator:
    return np.random.default_rng([konfiguracja["seed"], *strumien])


def _indeksy_potegowe(k_max: int) -> List[int]:
    if k_max < 4 or k_max & (k_max - 1):
        raise BladKonfiguracji(f"Pole 'k_max': {k_max} nie jest potęgą dwójki >= 4")
    return [2 ** j for j in range(1, k_max.bit_length())]


def jadro_blokowe(siatka: Siatka, k: int) -> Jadro:
    """√k na k diagonalnych blokach siatki [0, 1]: ||f|| = 1, ||f ⌢_1 f||² = 1/k, f ⌢_2 f = 1."""
    N = siatka.komorki
    if siatka.horyzont != 1.0 or N % k:
        raise BladKonfiguracji(f"Jądro blokowe k={k} wymaga T = 1 i N podzielnego przez k (N={N})")
    bloki = np.arange(N) // (N // k)
    return Jadro(siatka, np.where(bloki[:, None] == bloki[None, :], math.sqrt(k), 0.0))


@rejestruj("counterexample-3.1", {
    "T": Pole(float, 2.0, minimum=1e-12),
    "N": Pole(int, 2, minimum=2),
})
def kontrprzyklad(konfiguracja: Dict[str, Any]) -> Raport:
    """Jądra lustrzanie symetryczne rzędu 3 z f ⌢_1 g = 0, których całki nie są wolne."""
    T = konfiguracja["T"]
    siatka = Siatka(T, konfiguracja["N"])
    f = indykator_prostopadlosciany(siatka, [[(0.0, T / 2), (0.0, T), (0.0, T / 2)]])
    g = indykator_prostopadlosciany(siatka, [[(T / 2, T), (0.0, T), (T / 2, T)]])
    tol = _tolerancja(konfiguracja)

    norma = kontrakcja_zagniezdzona(f, g, 1).norma()
    F7, G7 = potega(calka(Rodzaj.WIGNER, f), 7), potega(calka(Rodzaj.WIGNER, g), 7)
    wartosci = {
        "norm_f_cont1_g": norma,
        "phi_F7": phi(F7),
        "phi_G7": phi(G7),
        "phi_F7G7": phi_iloczynu(F7, G7),
        "peak_entries": siatka.komorki ** 21,
    }
    naprzemienne = sprawdz_momenty_naprzemienne(Rodzaj.WIGNER, f, g, 14, tol, wzorce=[(7, 7)])
    permutowane = sprawdz_kontrakcje_permutowane(Rodzaj.WIGNER, f, g, tol)
    kontrole = [
        Kontrola.rowne("kernels_mirror_symmetric",
                       czy_lustrzanie_symetryczne(f) and czy_lustrzanie_symetryczne(g), True),
        Kontrola.co_najwyzej("norm_f_cont1_g_vanishes", norma, tol),
        Kontrola.co_najwyzej("phi_F7_vanishes", wartosci["phi_F7"], tol),
        Kontrola.co_najwyzej("phi_G7_vanishes", wartosci["phi_G7"], tol),
        Kontrola.co_najmniej("phi_F7G7_at_least_32", wartosci["phi_F7G7"], 32.0),
        Kontrola.rowne("alternating_moments_not_free", naprzemienne.czy_wolne, False),
    ]
    return Raport("counterexample-3.1", konfiguracja, wartosci, [naprzemienne, permutowane], kontrole)


def _para_korpusu(konfiguracja: Dict[str, Any], siatka: Siatka, numer: int) -> Tuple[Jadro, Jadro, bool]:
    # parzyste numery: nośniki rozłączne w czasie (para wolna), nieparzyste: pełne nośniki
    rng = _rng(konfiguracja, numer)
    n = int(rng.integers(1, konfiguracja["max_order"] + 1))
    m = int(rng.integers(1, konfiguracja["max_order"] + 1))
    wolna = numer % 2 == 0
    N = siatka.komorki
    nosnik_f, nosnik_g = (range(N // 2), range(N // 2, N)) if wolna else (None, None)
    f = unormuj(losowe_jadro_symetryczne(siatka, n, rng, nosnik=nosnik_f))
    g = unormuj(losowe_jadro_symetryczne(siatka, m, rng, nosnik=nosnik_g))
    return f, g, wolna


@rejestruj("freeness-battery", {
    "pairs": Pole(int, 50, minimum=1),
    "N": Pole(int, 3, minimum=2, maksimum=6),
    "T": Pole(float, 1.0, minimum=1e-12),
    "max_order": Pole(int, 2, minimum=1, maksimum=3),
    "depth": Pole(int, 8, minimum=2, maksimum=12),
    "kind": Pole(str, 'both', wybory=RODZAJE),
})
def bateria_wolnosci(konfiguracja: Dict[str, Any]) -> Raport:
    """Zgodność kryteriów kontrakcji, kowariancji kwadratów, gradientu i momentów naprzemiennych."""
    siatka = Siatka(konfiguracja["T"], konfiguracja["N"])
    tol = _tolerancja(konfiguracja)
    rodzaje = _rodzaje(konfiguracja["kind"])

    zgodne = zgodne_z_konstrukcja = 0
    niezgodnosci: List[Dict] = []
    roznica_sciezek = 0.0
    reprezentatywne, pokazane = [], set()
    for numer in range(konfiguracja["pairs"]):
        f, g, wolna = _para_korpusu(konfiguracja, siatka, numer)
        for rodzaj in rodzaje:
            werdykty = [sprawdz_kontrakcje(rodzaj, f, g, tol),
                        sprawdz_kowariancje(rodzaj, f, g, tol),
                        sprawdz_momenty_naprzemienne(rodzaj, f, g, konfiguracja["depth"], tol)]
            if rodzaj is Rodzaj.WIGNER:
                werdykty.append(sprawdz_gradient(f, g, tol))
                roznica = iloczyn_gradientow(f, g) - iloczyn_gradientow_komorkowo(f, g)
                roznica_sciezek = max(roznica_sciezek, math.sqrt(norma_phi2_kwadrat(roznica)))
            wyniki = {w.czy_wolne for w in werdykty}
            if len(wyniki) == 1:
                zgodne += 1
            else:
                niezgodnosci.append({"pair": numer, "kind": rodzaj.value,
                                     "verdicts": {w.metoda.value: w.czy_wolne for w in werdykty}})
            if wyniki == {wolna}:
                zgodne_z_konstrukcja += 1
            if (rodzaj, wolna) not in pokazane:
                pokazane.add((rodzaj, wolna))
                reprezentatywne.extend(werdykty)
        logger.debug(f"Para {numer}: rzędy ({f.rzad}, {g.rzad}), wolna={wolna}")
        if (numer + 1) % 10 == 0:
            loguj(f"  📊 Sprawdzono {numer + 1}/{konfiguracja['pairs']} par")

    proby = konfiguracja["pairs"] * len(rodzaje)
    wartosci = {
        "cases": proby,
        "agreeing": zgodne,
        "matching_construction": zgodne_z_konstrukcja,
        "disagreements": niezgodnosci,
        "gradient_two_path_max_diff": roznica_sciezek,
    }
    kontrole = [
        Kontrola.rowne("all_criteria_agree", zgodne, proby),
        Kontrola.rowne("verdicts_match_construction", zgodne_z_konstrukcja, proby),
    ]
    if Rodzaj.WIGNER in rodzaje:
        kontrole.append(Kontrola.co_najwyzej("gradient_two_path_equal", roznica_sciezek, tol))
    return Raport("freeness-battery", konfiguracja, wartosci, reprezentatywne, kontrole)


def _raport_ciagu(nazwa: str, konfiguracja: Dict[str, Any], indeksy: List[int], slad, kontrole,
                  dodatkowe: Dict[str, Any]) -> Raport:
    wartosci = {"k": indeksy, "trends": dict(slad.trendy)}
    wartosci.update(dodatkowe)
    return Raport(nazwa, konfiguracja, wartosci, [], kontrole, slady={"f_k,g_k": slad})


@rejestruj("sequence-4", {
    "k_max": Pole(int, 32, minimum=4, maksimum=64),
})
def ciag_blokowy(konfiguracja: Dict[str, Any]) -> Raport:
    """F_k = I_2(f_k): ||f_k ⌢_1 f_k||² = 1/k → 0, choć f_k ⌢_2 f_k = 1 dla każdego k."""
    indeksy = _indeksy_potegowe(konfiguracja["k_max"])
    siatka = Siatka(1.0, konfiguracja["k_max"])
    tol = _tolerancja(konfiguracja)
    fs = [jadro_blokowe(siatka, k) for k in indeksy]
    slad = analizuj_ciag(Rodzaj.WIGNER, fs, fs, indeksy, tol, gradient=True)

    kwadraty = [v ** 2 for v in slad.normy_zagniezdzone[1]]
    druga = [kontrakcja_zagniezdzona(f, f, 2).jako_skalar() for f in fs]
    czwarte = slad.momenty["phi_F4"]
    kontrole = []
    for k, kwadrat, wartosc, czwarty in zip(indeksy, kwadraty, druga, czwarte):
        kontrole.append(Kontrola.blisko(f"norm_cont1_sq_k{k}", kwadrat, 1.0 / k, 1e-12))
        kontrole.append(Kontrola.blisko(f"cont2_k{k}", wartosc, 1.0, 1e-12))
        kontrole.append(Kontrola.blisko(f"phi_F4_k{k}", czwarty, 2.0 + 1.0 / k, tol))
    kontrole += [
        Kontrola.rowne("nested_1_tends_to_zero", slad.trendy["nested_1"], True),
        Kontrola.rowne("nested_2_tends_to_zero", slad.trendy["nested_2"], False),
        Kontrola.rowne("fourth_moment_tends_to_2", zmierza_do_zera([c - 2.0 for c in czwarte], tol), True),
    ]
    return _raport_ciagu("sequence-4", konfiguracja, indeksy, slad, kontrole, {
        "norm_cont1_sq": kwadraty, "cont2": druga, "phi_F4": czwarte})


def jadro_lustrzane(siatka: Siatka) -> Jadro:
    """√2 na [0, 1/2]×[0, 1]×[0, 1/2] i [1/2, 1]×[0, 1]×[1/2, 1]: lustrzanie symetryczne, lecz nie symetryczne.

    ||h|| = 1, ||h||_4 = 2^{1/4}; dla jądra blokowego f_k (k >= 2) ||f_k ⌢_1 h||² = 1/k.
    """
    if siatka.horyzont != 1.0 or siatka.komorki % 2:
        raise BladKonfiguracji(f"Jądro lustrzane wymaga T = 1 i parzystego N (N={siatka.komorki})")
    return indykator_prostopadlosciany(siatka, [[(0.0, 0.5), (0.0, 1.0), (0.0, 0.5)],
                                                [(0.5, 1.0), (0.0, 1.0), (0.5, 1.0)]], math.sqrt(2.0))


@rejestruj("joint-convergence-4.5", {
    "k_max": Pole(int, 16, minimum=4, maksimum=64),
})
def zbieznosc_laczna(konfiguracja: Dict[str, Any]) -> Raport:
    """F_k = I_2(f_k) → S(0, 1) razem ze stałym G = I_2(1_{[0,1]²}) oraz z H = I_3(h), h lustrzanie symetryczne.

    Ślad "f_k,h" liczy maksimum po permutacjach i normy L⁴ na jądrze o różnych
    permutacjach; jego siatka ma co najwyżej SIATKA_LUSTRZANA komórek (tensory rzędu 6).
    """
    indeksy = _indeksy_potegowe(konfiguracja["k_max"])
    siatka = Siatka(1.0, konfiguracja["k_max"])
    tol = _tolerancja(konfiguracja)
    fs = [jadro_blokowe(siatka, k) for k in indeksy]
    g = indykator_prostopadlosciany(siatka, [[(0.0, 1.0), (0.0, 1.0)]])
    slad = analizuj_ciag(Rodzaj.WIGNER, fs, [g] * len(fs), indeksy, tol, permutacje=True)

    indeksy_h = _indeksy_potegowe(min(konfiguracja["k_max"], SIATKA_LUSTRZANA))
    siatka_h = Siatka(1.0, indeksy_h[-1])
    h = jadro_lustrzane(siatka_h)
    fs_h = [jadro_blokowe(siatka_h, k) for k in indeksy_h]
    slad_h = analizuj_ciag(Rodzaj.WIGNER, fs_h, [h] * len(fs_h), indeksy_h, tol, permutacje=True)

    kontrole = []
    for k, krzyzowa, czwarty in zip(indeksy, slad.momenty["phi_FG"], slad.momenty["phi_F4"]):
        kontrole.append(Kontrola.blisko(f"phi_FG_k{k}", krzyzowa, 1.0 / math.sqrt(k), tol))
        kontrole.append(Kontrola.blisko(f"phi_F4_k{k}", czwarty, 2.0 + 1.0 / k, tol))
    for trend in ("nested_1", "nested_2", "cov_squares", "max_norm_permuted"):
        kontrole.append(Kontrola.rowne(f"{trend}_tends_to_zero", slad.trendy[trend], True))

    kontrole += [
        Kontrola.rowne("h_mirror_symmetric", czy_lustrzanie_symetryczne(h), True),
        Kontrola.rowne("h_not_symmetric", czy_symetryczne(h), False),
    ]
    for k, norma, l4 in zip(indeksy_h, slad_h.normy_zagniezdzone[1], slad_h.diagnostyka["l4_norm_g"]):
        kontrole.append(Kontrola.blisko(f"mirror_norm_cont1_sq_k{k}", norma ** 2, 1.0 / k, 1e-12))
        kontrole.append(Kontrola.blisko(f"mirror_l4_norm_h_k{k}", l4, 2.0 ** 0.25, 1e-12))
    for trend in ("nested_1", "nested_2", "cov_squares", "max_norm_permuted"):
        kontrole.append(Kontrola.rowne(f"mirror_{trend}_tends_to_zero", slad_h.trendy[trend], True))

    raport = _raport_ciagu("joint-convergence-4.5", konfiguracja, indeksy, slad, kontrole, {
        "phi_FG": slad.momenty["phi_FG"],
        "l4_norm_f": slad.diagnostyka["l4_norm_f"],
        "l4_norm_g": slad.diagnostyka["l4_norm_g"],
        "cov_squares": slad.kowariancje_kwadratow,
        "mirror_k": indeksy_h,
        "mirror_trends": dict(slad_h.trendy),
        "mirror_l4_norm_h": slad_h.diagnostyka["l4_norm_g"],
        "mirror_max_norm_permuted": slad_h.diagnostyka["max_norm_permuted"],
        "mirror_cov_squares": slad_h.kowariancje_kwadratow,
    })
    raport.slady["f_k,h"] = slad_h
    return raport


@rejestruj("transfer-5.2", {
    "T": Pole(float, 1.0, minimum=1e-12),
    "N": Pole(int, 256, minimum=2),
})
def przyklad_transferu(konfiguracja: Dict[str, Any]) -> Raport:
    """f(x) = x, g(x) = x² - 3Tx/4: całki Wignera wolne, całki wolnego Poissona nie."""
    T = konfiguracja["T"]
    siatka = Siatka(T, konfiguracja["N"])
    f = probkuj_w_srodkach(siatka, lambda x: x, 1)
    g = probkuj_w_srodkach(siatka, lambda x: x ** 2 - 0.75 * T * x, 1)
    tol = _tolerancja(konfiguracja, probkowana=True)

    wigner = sprawdz_kontrakcje(Rodzaj.WIGNER, f, g, tol)
    poisson = sprawdz_kontrakcje(Rodzaj.WOLNY_POISSON, f, g, tol)
    iloczyn = iloczyn_skalarny(f, g)
    gwiazdka = kontrakcja_gwiazdkowa(f, g, 1).norma()
    wartosci = {
        "inner_product": iloczyn,
        "norm_star_1": gwiazdka,
        "wigner_free": wigner.czy_wolne,
        "poisson_free": poisson.czy_wolne,
    }
    werdykty = [wigner, poisson,
                sprawdz_kowariancje(Rodzaj.WIGNER, f, g, tol),
                sprawdz_kowariancje(Rodzaj.WOLNY_POISSON, f, g, tol)]
    kontrole = [
        Kontrola.co_najwyzej("inner_product_vanishes", iloczyn, tol),
        Kontrola.co_najmniej("star_contraction_nonzero", gwiazdka, 0.01),
        Kontrola.rowne("wigner_free", wigner.czy_wolne, True),
        Kontrola.rowne("poisson_free", poisson.czy_wolne, False),
    ]
    return Raport("transfer-5.2", konfiguracja, wartosci, werdykty, kontrole)


def _potega_tensorowa(wektor: np.ndarray, n: int) -> np.ndarray:
    return reduce(np.multiply.outer, [wektor] * n)


def _para_transferu(konfiguracja: Dict[str, Any], siatka: Siatka, numer: int) -> Tuple[Jadro, Jadro, str]:
    rng = _rng(konfiguracja, numer)
    n = int(rng.integers(1, konfiguracja["max_order"] + 1))
    m = int(rng.integers(1, konfiguracja["max_order"] + 1))
    N = siatka.komorki
    rodzina = RODZINY_TRANSFERU[numer % len(RODZINY_TRANSFERU)]
    if rodzina == 'disjoint':
        granica = int(rng.integers(1, N))
        f = losowe_jadro_symetryczne(siatka, n, rng, nosnik=range(granica))
        g = losowe_jadro_symetryczne(siatka, m, rng, nosnik=range(granica, N))
    elif rodzina == 'orthogonal_products':
        # u ⊥ v w L², ale u·v ≠ 0 punktowo
        u, w = rng.normal(size=N), rng.normal(size=N)
        v = w - (w @ u) / (u @ u) * u
        f, g = Jadro(siatka, _potega_tensorowa(u, n)), Jadro(siatka, _potega_tensorowa(v, m))
    else:
        f = losowe_jadro_symetryczne(siatka, n, rng)
        g = losowe_jadro_symetryczne(siatka, m, rng)
    return unormuj(f), unormuj(g), rodzina


@rejestruj("transfer-battery", {
    "pairs": Pole(int, 100, minimum=1),
    "N": Pole(int, 6, minimum=2, maksimum=10),
    "T": Pole(float, 1.0, minimum=1e-12),
    "max_order": Pole(int, 3, minimum=1, maksimum=3),
})
def bateria_transferu(konfiguracja: Dict[str, Any]) -> Raport:
    """Wolność Poissona pociąga wolność Wignera; zerowanie pierwszej kontrakcji przenosi się na pozostałe."""
    siatka = Siatka(konfiguracja["T"], konfiguracja["N"])
    tol = _tolerancja(konfiguracja)
    oczekiwane = {'disjoint': (True, True), 'orthogonal_products': (True, False),
                  'overlapping': (False, False)}

    liczniki = {rodzina: 0 for rodzina in RODZINY_TRANSFERU}
    naruszenia_transferu, naruszenia_propagacji, niezerowe_rozlaczne, niezgodne = [], [], [], []
    reprezentatywne, pokazane = [], set()
    for numer in range(konfiguracja["pairs"]):
        f, g, rodzina = _para_transferu(konfiguracja, siatka, numer)
        liczniki[rodzina] += 1
        normy = normy_kontrakcji(f, g, gwiazdkowe=True)
        zagniezdzone = [v for k, v in normy.items() if k.startswith("nested_")]
        wigner = sprawdz_kontrakcje(Rodzaj.WIGNER, f, g, tol)
        poisson = sprawdz_kontrakcje(Rodzaj.WOLNY_POISSON, f, g, tol)

        if poisson.czy_wolne and not wigner.czy_wolne:
            naruszenia_transferu.append(numer)
        if wigner.czy_wolne and max(zagniezdzone) > tol:
            naruszenia_propagacji.append({"pair": numer, "kind": Rodzaj.WIGNER.value})
        if poisson.czy_wolne and max(normy.values()) > tol:
            naruszenia_propagacji.append({"pair": numer, "kind": Rodzaj.WOLNY_POISSON.value})
        if rodzina == 'disjoint' and any(v != 0.0 for v in normy.values()):
            niezerowe_rozlaczne.append(numer)
        if (wigner.czy_wolne, poisson.czy_wolne) != oczekiwane[rodzina]:
            niezgodne.append({"pair": numer, "family": rodzina})
        if rodzina not in pokazane:
            pokazane.add(rodzina)
            reprezentatywne += [wigner, poisson]

    wartosci = {
        "families": liczniki,
        "transfer_violations": naruszenia_transferu,
        "propagation_violations": naruszenia_propagacji,
        "disjoint_nonzero": niezerowe_rozlaczne,
        "unexpected_outcomes": niezgodne,
    }
    kontrole = [
        Kontrola.rowne("poisson_free_implies_wigner_free", len(naruszenia_transferu), 0),
        Kontrola.rowne("first_contraction_nullity_propagates", len(naruszenia_propagacji), 0),
        Kontrola.rowne("disjoint_supports_exact_zeros", len(niezerowe_rozlaczne), 0),
        Kontrola.rowne("outcomes_match_families", len(niezgodne), 0),
    ]
    return Raport("transfer-battery", konfiguracja, wartosci, reprezentatywne, kontrole)


@rejestruj("fourth-moment-6.1", {
    "order": Pole(int, 0, minimum=0, maksimum=3, opis="0 oznacza rzędy 1..3"),
    "kind": Pole(str, 'both', wybory=RODZAJE),
    "N": Pole(int, 4, minimum=2, maksimum=8),
    "T": Pole(float, 1.0, minimum=1e-12),
})
def czwarty_moment(konfiguracja: Dict[str, Any]) -> Raport:
    """Cov((F+G)², (F-G)²) = 2(φ(F⁴) - 2) dla F o wariancji 1 i jej przesuniętej wolnej kopii G."""
    N = konfiguracja["N"]
    if N % 2:
        raise BladKonfiguracji(f"Pole 'N': przesunięta kopia wymaga parzystej liczby komórek, otrzymano {N}")
    siatka = Siatka(konfiguracja["T"], N)
    tol = _tolerancja(konfiguracja)
    rzedy = [konfiguracja["order"]] if konfiguracja["order"] else [1, 2, 3]

    wartosci, werdykty, kontrole = {}, [], []
    for nr_rodzaju, rodzaj in enumerate(_rodzaje(konfiguracja["kind"])):
        for n in rzedy:
            rng = _rng(konfiguracja, nr_rodzaju, n)
            f = unormuj(losowe_jadro_symetryczne(siatka, n, rng, nosnik=range(N // 2)))
            X = calka(rodzaj, f)
            lewa, prawa = tozsamosc_czwartego_momentu(X, N // 2)
            klucz = f"{rodzaj.value}_order{n}"
            wartosci[f"{klucz}_cov_sum_diff_squares"] = lewa
            wartosci[f"{klucz}_two_fourth_moment_gap"] = prawa
            wartosci[f"{klucz}_phi_F4"] = moment(X, 4)
            if rodzaj is Rodzaj.WOLNY_POISSON:
                wartosci[f"{klucz}_phi_F4_minus_2phi_F3"] = roznica_momentow_poissona(X)
            kopia = sprawdz_kontrakcje(rodzaj, f, przesun_jadro(f, N // 2), tol)
            werdykty.append(kopia)
            kontrole += [
                Kontrola.blisko(f"{klucz}_identity", lewa, prawa, tol),
                Kontrola.blisko(f"{klucz}_unit_variance", moment(X, 2), 1.0, tol),
                Kontrola.rowne(f"{klucz}_shifted_copy_free", kopia.czy_wolne, True),
            ]
    return Raport("fourth-moment-6.1", konfiguracja, wartosci, werdykty, kontrole)


@rejestruj("multivariate-6.4", {
    "components": Pole(int, 2, minimum=1, maksimum=4),
    "N": Pole(int, 1, minimum=1, maksimum=4, opis="komórki na jednostkę czasu"),
    "kind": Pole(str, 'both', wybory=RODZAJE),
})
def wielowymiarowy(konfiguracja: Dict[str, Any]) -> Raport:
    """F_i = I_1(1_{[i, i+1]}): φ(||F||⁴) wobec celu półkolistego i tożsamość dla wolnych kopii."""
    d, na_jednostke = konfiguracja["components"], konfiguracja["N"]
    siatka = Siatka(2.0 * d, 2 * d * na_jednostke)
    tol = _tolerancja(konfiguracja)

    wartosci, kontrole = {}, []
    for rodzaj in _rodzaje(konfiguracja["kind"]):
        F = [calka(rodzaj, indykator_prostopadlosciany(siatka, [[(float(i), float(i + 1))]]))
             for i in range(d)]
        G = [przesun_w_czasie(X, d * na_jednostke) for X in F]
        C = macierz_kowariancji(F)
        wartosc = czwarty_moment_normy(rodzaj, F)
        cel = docelowy_czwarty_moment_normy(C)
        lewa, prawa = kowariancja_norm_kopii(F, G)
        if rodzaj is Rodzaj.WIGNER:
            oczekiwana = cel
        else:
            # składowe wolne o rozkładzie P(1): d·m_4 + d(d-1)·φ(F_i²)φ(F_j²)
            oczekiwana = d * moment_wolnego_poissona(1.0, 4, wycentrowany=True) + d * (d - 1)
        klucz = rodzaj.value
        wartosci[f"{klucz}_covariance_matrix"] = C
        wartosci[f"{klucz}_phi_norm4"] = wartosc
        wartosci[f"{klucz}_semicircular_target"] = cel
        wartosci[f"{klucz}_copies_half_covariance"] = lewa
        wartosci[f"{klucz}_copies_expansion"] = prawa
        kontrole += [
            Kontrola.blisko(f"{klucz}_phi_norm4", wartosc, oczekiwana, tol),
            Kontrola.blisko(f"{klucz}_free_copies_identity", lewa, prawa, tol),
        ]
    return Raport("multivariate-6.4", konfiguracja, wartosci, [], kontrole)


@rejestruj("gue-crosscheck", {
    "d": Pole(int, 1000, minimum=2),
    "trials": Pole(int, 20, minimum=2),
    "kernels": Pole(int, 20, minimum=1),
    "N": Pole(int, 4, minimum=2, maksimum=6),
    "T": Pole(float, 1.0, minimum=1e-12),
    "max_order": Pole(int, 2, minimum=1, maksimum=2),
    "k_max": Pole(int, 6, minimum=1, maksimum=8),
})
def wyrocznia_macierzowa(konfiguracja: Dict[str, Any]) -> Raport:
    """Momenty z silnika wobec średnich śladów wielomianów od niezależnych macierzy GOE."""
    siatka = Siatka(konfiguracja["T"], konfiguracja["N"])
    d, proby, watki = konfiguracja["d"], konfiguracja["trials"], konfiguracja["threads"]
    rzedy = list(range(1, konfiguracja["k_max"] + 1))
    obciazenie = STALA_OBCIAZENIA / d

    wiersze, poza_progiem, najgorszy = [], 0, 0.0
    for numer in range(konfiguracja["kernels"]):
        rng = _rng(konfiguracja, numer)
        n = 1 + numer % konfiguracja["max_order"]
        f = unormuj(losowe_jadro_symetryczne(siatka, n, rng))
        lista = potegi(calka(Rodzaj.WIGNER, f), (rzedy[-1] + 1) // 2)
        oszacowania = szacuj_momenty(f, rzedy, d, proby, [konfiguracja["seed"], numer], watki)
        for k in rzedy:
            dokladny = phi_iloczynu(lista[(k + 1) // 2], lista[k // 2])
            srednia, blad = oszacowania[k]
            prog = 3.0 * blad + obciazenie
            odchylenie = abs(srednia - dokladny)
            poza_progiem += odchylenie > prog
            najgorszy = max(najgorszy, odchylenie / prog)
            wiersze.append({"kernel": numer, "order": n, "k": k, "engine": dokladny,
                            "mean": srednia, "stderr": blad, "within": odchylenie <= prog})
        loguj(f"  📊 Jądro {numer + 1}/{konfiguracja['kernels']} (rząd {n}) porównane")

    N = siatka.komorki
    wskaznik = (np.arange(N) < N // 2).astype(float)
    f0, g0 = unormuj(Jadro(siatka, wskaznik)), unormuj(Jadro(siatka, 1.0 - wskaznik))
    naprzemienne = {}
    kontrole = [Kontrola.rowne("moments_within_3_stderr_plus_bias", poza_progiem, 0)]
    for nr, wzorzec in enumerate([(1, 1), (2, 2), (1, 2, 1, 2)]):
        srednia, blad = szacuj_slad_naprzemienny(f0, g0, wzorzec, d, proby,
                                                 [konfiguracja["seed"], konfiguracja["kernels"], nr], watki)
        klucz = ",".join(map(str, wzorzec))
        naprzemienne[klucz] = {"mean": srednia, "stderr": blad}
        kontrole.append(Kontrola.co_najwyzej(f"alternating_trace_{klucz}_vanishes", srednia,
                                             3.0 * blad + obciazenie))

    wartosci = {"rows": wiersze, "outside_threshold": poza_progiem, "worst_ratio": najgorszy,
                "bias_term": obciazenie, "alternating_traces": naprzemienne}
    return Raport("gue-crosscheck", konfiguracja, wartosci, [], kontrole)
