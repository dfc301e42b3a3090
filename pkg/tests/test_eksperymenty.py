import csv
import json

from pytest import approx, mark, raises

from eksperymenty.katalog import jadro_lustrzane
from eksperymenty.raport import Kontrola, Raport, zapisz_raport
from eksperymenty.rejestr import (WSPOLNE_POLA, Pole, nazwy_eksperymentow, pobierz_eksperyment,
                                  zweryfikuj_konfiguracje)
from eksperymenty.uruchamianie import uruchom_eksperyment
from rachunek.bledy import BladKonfiguracji
from rachunek.jadro import Siatka, czy_lustrzanie_symetryczne, czy_symetryczne, norma_lp

LEKKIE = {
    "counterexample-3.1": {},
    "freeness-battery": {"pairs": 4, "depth": 4},
    "sequence-4": {"k_max": 16},
    "joint-convergence-4.5": {"k_max": 16},
    "transfer-5.2": {},
    "transfer-battery": {"pairs": 6, "N": 4},
    "fourth-moment-6.1": {},
    "multivariate-6.4": {},
}


def test_rejestr_zawiera_wszystkie_eksperymenty():
    assert set(nazwy_eksperymentow()) == set(LEKKIE) | {"gue-crosscheck"}


@mark.parametrize("nazwa", sorted(LEKKIE))
def test_eksperymenty_przechodza(nazwa):
    raport = uruchom_eksperyment(nazwa, LEKKIE[nazwa])
    assert raport.kontrole
    assert raport.czy_zaliczony, [k.do_slownika() for k in raport.nieudane_kontrole()]
    assert raport.czas_ms >= 0


def test_kontrprzyklad_wartosci():
    raport = uruchom_eksperyment("counterexample-3.1")
    assert raport.wartosci["norm_f_cont1_g"] == 0.0
    assert raport.wartosci["phi_F7"] == approx(0.0, abs=1e-9)
    assert raport.wartosci["phi_F7G7"] >= 32.0
    assert raport.wartosci["peak_entries"] == 2 ** 21
    assert not raport.werdykty[0].czy_wolne


def test_przyklad_transferu_wartosci():
    raport = uruchom_eksperyment("transfer-5.2")
    assert abs(raport.wartosci["inner_product"]) <= 1e-3
    assert raport.wartosci["norm_star_1"] >= 0.01
    assert raport.wartosci["wigner_free"] is True
    assert raport.wartosci["poisson_free"] is False


def test_wielowymiarowy_wartosci():
    raport = uruchom_eksperyment("multivariate-6.4", {"components": 2})
    assert raport.wartosci["wigner_phi_norm4"] == approx(6.0)
    assert raport.wartosci["free_poisson_phi_norm4"] == approx(8.0)


def test_wyrocznia_macierzowa_ksztalt_raportu():
    raport = uruchom_eksperyment("gue-crosscheck", {"d": 80, "trials": 3, "kernels": 2, "N": 2, "k_max": 3})
    assert len(raport.wartosci["rows"]) == 2 * 3
    assert set(raport.wartosci["alternating_traces"]) == {"1,1", "2,2", "1,2,1,2"}
    assert raport.wartosci["bias_term"] == approx(10.0 / 80)
    assert len(raport.kontrole) == 4


@mark.parametrize("nazwa konfiguracja".split(), (
    ("nie-ma-takiego", {}),
    ("sequence-4", {"d": 3}),
    ("sequence-4", {"k_max": "abc"}),
    ("sequence-4", {"k_max": 12}),
    ("sequence-4", {"k_max": 2}),
    ("freeness-battery", {"kind": "gauss"}),
    ("fourth-moment-6.1", {"N": 5}),
    ("transfer-5.2", {"tol": -1}),
    ("counterexample-3.1", {"seed": 1.5}),
))
def test_bledna_konfiguracja(nazwa, konfiguracja):
    with raises(BladKonfiguracji):
        uruchom_eksperyment(nazwa, konfiguracja)


def test_nieznany_eksperyment_wymienia_zarejestrowane():
    with raises(BladKonfiguracji, match="transfer-5.2"):
        pobierz_eksperyment("x")


def test_walidacja_uzupelnia_domyslne():
    eksperyment = pobierz_eksperyment("transfer-5.2")
    konfiguracja = zweryfikuj_konfiguracje(eksperyment, {"N": "128", "seed": "7"})
    assert konfiguracja == {"seed": 7, "threads": 1, "tol": None, "T": 1.0, "N": 128}
    assert set(WSPOLNE_POLA) <= set(eksperyment.domyslna_konfiguracja())


@mark.parametrize("wartosc oczekiwana".split(), (("true", True), ("0", False), (1, True)))
def test_pole_logiczne(wartosc, oczekiwana):
    assert Pole(bool, False).rzutuj("flaga", wartosc) is oczekiwana


def test_kontrole():
    assert Kontrola.blisko("a", 1.0 + 1e-12, 1.0, 1e-9).zaliczona
    assert not Kontrola.blisko("a", float("nan"), 1.0, 1e-9).zaliczona
    assert Kontrola.co_najmniej("b", 32.0, 32.0).zaliczona
    assert Kontrola.co_najwyzej("c", -1e-10, 1e-9).zaliczona
    assert not Kontrola.rowne("d", 1, 0).zaliczona


def test_raport_json(tmp_path):
    raport = uruchom_eksperyment("transfer-5.2", {}, tmp_path / "wyniki" / "raport.json")
    dane = json.loads((tmp_path / "wyniki" / "raport.json").read_text(encoding="utf-8"))
    assert set(dane) == {"experiment", "inputs", "values", "verdicts", "checks", "passed",
                         "runtime_ms", "engine_version", "traces"}
    assert dane["experiment"] == "transfer-5.2"
    assert dane["passed"] is True
    assert dane["inputs"]["N"] == 256
    assert len(dane["verdicts"]) == len(raport.werdykty)
    assert dane["verdicts"][0]["method"] == "contraction"


def test_raport_csv_ze_sladem(tmp_path):
    uruchom_eksperyment("sequence-4", {"k_max": 16}, tmp_path / "slad.csv", "csv")
    with open(tmp_path / "slad.csv", encoding="utf-8", newline="") as plik:
        wiersze = list(csv.reader(plik))
    assert wiersze[0][:2] == ["trace", "k"]
    assert "norm_nested_1" in wiersze[0]
    assert [w[1] for w in wiersze[1:]] == ["2.0", "4.0", "8.0", "16.0"]


def test_raport_csv_bez_sladu(tmp_path):
    raport = Raport("x", {}, {"a": 1.5}, [], [Kontrola.rowne("ok", 1, 1)])
    zapisz_raport(raport, tmp_path / "r.csv", "csv")
    wiersze = list(csv.reader(open(tmp_path / "r.csv", encoding="utf-8", newline="")))
    assert wiersze == [["name", "value"], ["a", "1.5"], ["check:ok", "True"]]


def test_nieznany_format(tmp_path):
    with raises(BladKonfiguracji):
        zapisz_raport(Raport("x", {}), tmp_path / "r.xml", "xml")


def test_jadro_lustrzane_nie_jest_symetryczne():
    h = jadro_lustrzane(Siatka(1.0, 4))
    assert czy_lustrzanie_symetryczne(h)
    assert not czy_symetryczne(h)
    assert h.norma() == approx(1.0)
    assert norma_lp(h, 4) == approx(2.0 ** 0.25)
    with raises(BladKonfiguracji):
        jadro_lustrzane(Siatka(2.0, 4))


def test_zbieznosc_laczna_sciezka_permutacji_na_jadrze_lustrzanym():
    raport = uruchom_eksperyment("joint-convergence-4.5", {"k_max": 16})
    assert set(raport.slady) == {"f_k,g_k", "f_k,h"}
    assert raport.wartosci["mirror_k"] == [2, 4, 8, 16]
    assert raport.wartosci["mirror_l4_norm_h"] == approx([2.0 ** 0.25] * 4)
    permutowane = raport.wartosci["mirror_max_norm_permuted"]
    assert all(a > b > 0.0 for a, b in zip(permutowane, permutowane[1:]))
    zagniezdzone = raport.slady["f_k,h"].normy_zagniezdzone[1]
    assert [v ** 2 for v in zagniezdzone] == approx([1 / 2, 1 / 4, 1 / 8, 1 / 16])
    assert all(raport.wartosci["mirror_trends"].values())
