from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional

from rachunek.bledy import BladZakresu


class Metoda(Enum):
    KONTRAKCJE = 'contraction'
    KOWARIANCJA = 'covariance'
    GRADIENT = 'gradient'
    MOMENTY_NAPRZEMIENNE = 'alternating_moments'
    KONTRAKCJE_PERMUTOWANE = 'permuted_contraction'


@dataclass
class WerdyktWolnosci:
    """Wynik jednego kryterium wolności; czy_wolne <=> wszystkie wartości świadka <= tolerancja."""
    metoda: Metoda
    czy_wolne: bool
    swiadek: Dict[str, float]
    tolerancja: float
    rozstrzygajacy: bool = True
    szczegoly: Dict = field(default_factory=dict)

    @classmethod
    def ze_swiadka(cls, metoda: Metoda, swiadek: Dict[str, float], tolerancja: float,
                   rozstrzygajacy: Optional[bool] = None, szczegoly: Optional[Dict] = None) -> 'WerdyktWolnosci':
        czy_wolne = all(abs(wartosc) <= tolerancja for wartosc in swiadek.values())
        return cls(
            metoda=metoda,
            czy_wolne=czy_wolne,
            swiadek={k: float(v) for k, v in swiadek.items()},
            tolerancja=tolerancja,
            rozstrzygajacy=True if rozstrzygajacy is None else rozstrzygajacy,
            szczegoly=szczegoly or {},
        )

    def do_slownika(self) -> Dict:
        return {
            "method": self.metoda.value,
            "is_free": self.czy_wolne,
            "conclusive": self.rozstrzygajacy,
            "witness": self.swiadek,
            "tolerance": self.tolerancja,
            "details": self.szczegoly,
        }


@dataclass
class SladCiagu:
    """Wielkości liczone dla kolejnych wyrazów ciągu par (f_k, g_k)."""
    indeksy: List[int]
    normy_zagniezdzone: Dict[int, List[float]]
    normy_gwiazdkowe: Dict[int, List[float]]
    kowariancje_kwadratow: List[float]
    kowariancje_z_rozwiniecia: List[float]
    momenty: Dict[str, List[float]] = field(default_factory=dict)
    diagnostyka: Dict[str, List[float]] = field(default_factory=dict)
    trendy: Dict[str, bool] = field(default_factory=dict)

    def __post_init__(self) -> None:
        dlugosc = len(self.indeksy)
        serie = {"kowariancje_kwadratow": self.kowariancje_kwadratow,
                 "kowariancje_z_rozwiniecia": self.kowariancje_z_rozwiniecia}
        serie.update({f"nested_{p}": v for p, v in self.normy_zagniezdzone.items()})
        serie.update({f"star_{p}": v for p, v in self.normy_gwiazdkowe.items()})
        serie.update(self.momenty)
        serie.update(self.diagnostyka)
        for nazwa, wartosci in serie.items():
            if len(wartosci) != dlugosc:
                raise BladZakresu(f"Seria {nazwa} ma {len(wartosci)} wartości, oczekiwano {dlugosc}")

    def kolumny(self) -> Dict[str, List[float]]:
        kolumny: Dict[str, List[float]] = {"k": list(self.indeksy)}
        for p, wartosci in sorted(self.normy_zagniezdzone.items()):
            kolumny[f"norm_nested_{p}"] = wartosci
        for p, wartosci in sorted(self.normy_gwiazdkowe.items()):
            kolumny[f"norm_star_{p}"] = wartosci
        kolumny["cov_squares"] = self.kowariancje_kwadratow
        kolumny["cov_squares_expansion"] = self.kowariancje_z_rozwiniecia
        kolumny.update(self.momenty)
        kolumny.update(self.diagnostyka)
        return kolumny

    def do_slownika(self) -> Dict:
        return {"columns": self.kolumny(), "trends": dict(self.trendy)}
