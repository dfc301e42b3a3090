import itertools
import logging
from typing import Dict, List, Optional, Sequence

from rachunek.bichaos import iloczyn_gradientow, norma_phi2_kwadrat
from rachunek.bledy import BladZakresu, NiezgodnoscSiatek
from rachunek.chaos import Rodzaj, calka, phi, phi_iloczynu, pomnoz
from rachunek.jadro import Jadro, czy_symetryczne, norma_lp, permutuj
from rachunek.konfiguracja import pobierz_ustawienia
from rachunek.kontrakcje import kontrakcja_gwiazdkowa, kontrakcja_zagniezdzona
from wolnosc.werdykty import SladCiagu

logger = logging.getLogger('fchaos.wolnosc')


def zmierza_do_zera(wartosci: Sequence[float], tolerancja: float) -> bool:
    """Nierosnący ciąg, który spadł co najmniej o połowę albo jest już poniżej tolerancji."""
    if not wartosci:
        return False
    ostatnia = abs(wartosci[-1])
    if ostatnia <= tolerancja:
        return True
    nierosnacy = all(abs(b) <= abs(a) + tolerancja for a, b in zip(wartosci, wartosci[1:]))
    return len(wartosci) > 1 and nierosnacy and ostatnia <= 0.5 * abs(wartosci[0])


def _max_norma_permutowana(rodzaj: Rodzaj, f: Jadro, g: Jadro) -> float:
    najwieksza = 0.0
    permutacje_g = [permutuj(g, pi) for pi in itertools.permutations(range(g.rzad))]
    for sigma in itertools.permutations(range(f.rzad)):
        f_sigma = permutuj(f, sigma)
        for g_pi in permutacje_g:
            for p in range(1, min(f.rzad, g.rzad) + 1):
                najwieksza = max(najwieksza, kontrakcja_zagniezdzona(f_sigma, g_pi, p).norma())
                if rodzaj is Rodzaj.WOLNY_POISSON:
                    najwieksza = max(najwieksza, kontrakcja_gwiazdkowa(f_sigma, g_pi, p).norma())
    return najwieksza


def analizuj_ciag(rodzaj: Rodzaj, fs: Sequence[Jadro], gs: Sequence[Jadro],
                  indeksy: Optional[Sequence[int]] = None, tolerancja: Optional[float] = None,
                  gradient: bool = False, permutacje: bool = False) -> SladCiagu:
    """Ślad ciągu par (f_k, g_k): normy kontrakcji, Cov(F_k², G_k²) dwiema drogami, momenty.

    gradient=True dodaje ||<∇F_k, ∇G_k>||² (Wigner, jądra symetryczne),
    permutacje=True dodaje max_{σ,π,p} ||f_k^(σ) ⌢_p g_k^(π)|| (jądra lustrzanie symetryczne).
    """
    if not fs:
        raise BladZakresu("Ciąg jąder nie może być pusty")
    if len(fs) != len(gs):
        raise BladZakresu(f"Ciągi mają różne długości: {len(fs)} i {len(gs)}")
    if len({f.rzad for f in fs}) != 1 or len({g.rzad for g in gs}) != 1:
        raise BladZakresu("Rzędy jąder w obrębie ciągu muszą być stałe")
    if len({f.siatka for f in fs} | {g.siatka for g in gs}) != 1:
        raise NiezgodnoscSiatek("Wszystkie jądra obu ciągów muszą leżeć na tej samej siatce")
    if gradient and rodzaj is not Rodzaj.WIGNER:
        raise BladZakresu("Kryterium gradientowe dotyczy tylko chaosu Wignera")
    tol = pobierz_ustawienia().tolerancja_dokladna if tolerancja is None else tolerancja
    indeksy = list(range(1, len(fs) + 1)) if indeksy is None else list(indeksy)
    if len(indeksy) != len(fs):
        raise BladZakresu(f"Podano {len(indeksy)} indeksów dla {len(fs)} wyrazów")

    zakres_p = range(1, min(fs[0].rzad, gs[0].rzad) + 1)
    zagniezdzone: Dict[int, List[float]] = {p: [] for p in zakres_p}
    gwiazdkowe: Dict[int, List[float]] = {p: [] for p in zakres_p}
    kowariancje, rozwiniecia = [], []
    momenty: Dict[str, List[float]] = {"phi_F2": [], "phi_G2": [], "phi_FG": [], "phi_F4": [], "phi_G4": []}
    diagnostyka: Dict[str, List[float]] = {"l4_norm_f": [], "l4_norm_g": []}
    if gradient:
        diagnostyka["phi2_norm_sq_gradient"] = []
    if permutacje:
        diagnostyka["max_norm_permuted"] = []

    for k, f, g in zip(indeksy, fs, gs):
        for p in zakres_p:
            zagniezdzone[p].append(kontrakcja_zagniezdzona(f, g, p).norma())
            gwiazdkowe[p].append(kontrakcja_gwiazdkowa(f, g, p).norma())

        F, G = calka(rodzaj, f), calka(rodzaj, g)
        F2, G2 = pomnoz(F, F), pomnoz(G, G)
        kowariancje.append(phi_iloczynu(F2, G2) - phi(F2) * phi(G2))
        rozwiniecie = sum(zagniezdzone[p][-1] ** 2 for p in zakres_p)
        if rodzaj is Rodzaj.WOLNY_POISSON:
            rozwiniecie += sum(gwiazdkowe[p][-1] ** 2 for p in zakres_p)
        rozwiniecia.append(rozwiniecie)

        momenty["phi_F2"].append(phi(F2))
        momenty["phi_G2"].append(phi(G2))
        momenty["phi_FG"].append(phi_iloczynu(F, G))
        momenty["phi_F4"].append(phi_iloczynu(F2, F2))
        momenty["phi_G4"].append(phi_iloczynu(G2, G2))
        diagnostyka["l4_norm_f"].append(norma_lp(f, 4))
        diagnostyka["l4_norm_g"].append(norma_lp(g, 4))
        if gradient:
            if not (czy_symetryczne(f) and czy_symetryczne(g)):
                raise BladZakresu(f"Wyraz k={k}: kryterium gradientowe wymaga jąder symetrycznych")
            diagnostyka["phi2_norm_sq_gradient"].append(norma_phi2_kwadrat(iloczyn_gradientow(f, g)))
        if permutacje:
            diagnostyka["max_norm_permuted"].append(_max_norma_permutowana(rodzaj, f, g))
        logger.debug(f"Wyraz k={k}: Cov(F², G²) = {kowariancje[-1]:.6g}")

    trendy = {f"nested_{p}": zmierza_do_zera(v, tol) for p, v in zagniezdzone.items()}
    if rodzaj is Rodzaj.WOLNY_POISSON:
        trendy.update({f"star_{p}": zmierza_do_zera(v, tol) for p, v in gwiazdkowe.items()})
    trendy["cov_squares"] = zmierza_do_zera(kowariancje, tol)
    for nazwa in ("phi2_norm_sq_gradient", "max_norm_permuted"):
        if nazwa in diagnostyka:
            trendy[nazwa] = zmierza_do_zera(diagnostyka[nazwa], tol)

    return SladCiagu(
        indeksy=indeksy,
        normy_zagniezdzone=zagniezdzone,
        normy_gwiazdkowe=gwiazdkowe,
        kowariancje_kwadratow=kowariancje,
        kowariancje_z_rozwiniecia=rozwiniecia,
        momenty=momenty,
        diagnostyka=diagnostyka,
        trendy=trendy,
    )
