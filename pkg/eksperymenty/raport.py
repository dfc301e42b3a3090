import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from rachunek import __version__
from rachunek.bledy import BladKonfiguracji
from wolnosc.werdykty import SladCiagu, WerdyktWolnosci

FORMATY = ('json', 'csv')


def _do_json(obiekt: Any) -> Any:
    if isinstance(obiekt, dict):
        return {str(k): _do_json(v) for k, v in obiekt.items()}
    if isinstance(obiekt, (list, tuple)):
        return [_do_json(v) for v in obiekt]
    if isinstance(obiekt, np.ndarray):
        return _do_json(obiekt.tolist())
    if isinstance(obiekt, np.bool_):
        return bool(obiekt)
    if isinstance(obiekt, np.integer):
        return int(obiekt)
    if isinstance(obiekt, (float, np.floating)):
        return float(obiekt)
    return obiekt


@dataclass
class Kontrola:
    """Nazwana kontrola wyniku eksperymentu; kod wyjścia 0 tylko gdy wszystkie przechodzą."""
    nazwa: str
    zaliczona: bool
    wartosc: Any
    oczekiwana: Any
    tolerancja: Optional[float] = None

    @classmethod
    def blisko(cls, nazwa: str, wartosc: float, oczekiwana: float, tolerancja: float) -> 'Kontrola':
        zaliczona = math.isfinite(wartosc) and abs(wartosc - oczekiwana) <= tolerancja
        return cls(nazwa, bool(zaliczona), float(wartosc), float(oczekiwana), tolerancja)

    @classmethod
    def co_najmniej(cls, nazwa: str, wartosc: float, prog: float) -> 'Kontrola':
        return cls(nazwa, bool(wartosc >= prog), float(wartosc), f">= {prog}")

    @classmethod
    def co_najwyzej(cls, nazwa: str, wartosc: float, prog: float) -> 'Kontrola':
        return cls(nazwa, bool(abs(wartosc) <= prog), float(wartosc), f"|x| <= {prog}")

    @classmethod
    def rowne(cls, nazwa: str, wartosc: Any, oczekiwana: Any) -> 'Kontrola':
        return cls(nazwa, bool(wartosc == oczekiwana), wartosc, oczekiwana)

    def do_slownika(self) -> Dict:
        return _do_json({
            "name": self.nazwa,
            "passed": self.zaliczona,
            "value": self.wartosc,
            "expected": self.oczekiwana,
            "tolerance": self.tolerancja,
        })


@dataclass
class Raport:
    eksperyment: str
    wejscie: Dict[str, Any]
    wartosci: Dict[str, Any] = field(default_factory=dict)
    werdykty: List[WerdyktWolnosci] = field(default_factory=list)
    kontrole: List[Kontrola] = field(default_factory=list)
    czas_ms: int = 0
    wersja_silnika: str = __version__
    slady: Dict[str, SladCiagu] = field(default_factory=dict)

    @property
    def czy_zaliczony(self) -> bool:
        return all(k.zaliczona for k in self.kontrole)

    def nieudane_kontrole(self) -> List[Kontrola]:
        return [k for k in self.kontrole if not k.zaliczona]

    def do_slownika(self) -> Dict:
        return {
            "experiment": self.eksperyment,
            "inputs": _do_json(self.wejscie),
            "values": _do_json(self.wartosci),
            "verdicts": [_do_json(w.do_slownika()) for w in self.werdykty],
            "checks": [k.do_slownika() for k in self.kontrole],
            "passed": self.czy_zaliczony,
            "runtime_ms": int(self.czas_ms),
            "engine_version": self.wersja_silnika,
            "traces": {nazwa: _do_json(slad.do_slownika()) for nazwa, slad in self.slady.items()},
        }

    def do_json(self) -> str:
        return json.dumps(self.do_slownika(), indent=2, ensure_ascii=False)


def _zapisz_csv(raport: Raport, plik) -> None:
    pisarz = csv.writer(plik)
    if not raport.slady:
        pisarz.writerow(["name", "value"])
        for nazwa, wartosc in raport.wartosci.items():
            pisarz.writerow([nazwa, json.dumps(_do_json(wartosc))])
        for kontrola in raport.kontrole:
            pisarz.writerow([f"check:{kontrola.nazwa}", kontrola.zaliczona])
        return
    for nazwa_sladu, slad in raport.slady.items():
        kolumny = slad.kolumny()
        pisarz.writerow(["trace"] + list(kolumny))
        for wiersz in zip(*kolumny.values()):
            pisarz.writerow([nazwa_sladu] + [repr(float(v)) for v in wiersz])


def zapisz_raport(raport: Raport, sciezka: Union[str, Path], format: str = 'json') -> Path:
    if format not in FORMATY:
        raise BladKonfiguracji(f"Nieznany format raportu: {format} (dostępne: {', '.join(FORMATY)})")
    sciezka = Path(sciezka)
    if sciezka.parent != Path(''):
        sciezka.parent.mkdir(parents=True, exist_ok=True)
    with open(sciezka, 'w', encoding='utf-8', newline='') as plik:
        if format == 'json':
            json.dump(raport.do_slownika(), plik, indent=2, ensure_ascii=False)
        else:
            _zapisz_csv(raport, plik)
    return sciezka
