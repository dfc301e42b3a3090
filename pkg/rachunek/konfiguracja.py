import os
from dataclasses import dataclass

ZMIENNA_LIMITU = "FCHAOS_MAX_TENSOR_ENTRIES"
DOMYSLNY_LIMIT = 2 ** 26


@dataclass(frozen=True)
class Ustawienia:
    maks_elementow_tensora: int = DOMYSLNY_LIMIT
    tolerancja_dokladna: float = 1e-9
    tolerancja_zera: float = 1e-12
    tolerancja_probkowania: float = 1e-3
    prog_rzadkosci: float = 0.05
    limit_symetryzacji: int = 8
    limit_permutacji: int = 6
    limit_mnozen_macierzy: int = 10_000
    limit_podzialow: int = 14


def pobierz_ustawienia() -> Ustawienia:
    # Zmienna środowiskowa czytana przy każdym wywołaniu
    surowa = os.environ.get(ZMIENNA_LIMITU)
    if surowa is None or not surowa.strip():
        return Ustawienia()
    try:
        limit = int(surowa)
    except ValueError:
        raise ValueError(f"{ZMIENNA_LIMITU} musi być liczbą całkowitą, otrzymano: {surowa!r}")
    if limit < 1:
        raise ValueError(f"{ZMIENNA_LIMITU} musi być dodatni, otrzymano: {limit}")
    return Ustawienia(maks_elementow_tensora=limit)
