from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

from rachunek.bledy import BladKonfiguracji


@dataclass(frozen=True)
class Pole:
    """Opis jednego klucza konfiguracji: typ, wartość domyślna i dopuszczalny zakres."""
    typ: type
    domyslna: Any
    minimum: Optional[float] = None
    maksimum: Optional[float] = None
    wybory: Optional[Tuple[str, ...]] = None
    opis: str = ""

    def rzutuj(self, klucz: str, wartosc: Any) -> Any:
        if wartosc is None:
            return self.domyslna
        try:
            if self.typ is bool:
                if isinstance(wartosc, str):
                    if wartosc.lower() not in ('true', 'false', '1', '0'):
                        raise ValueError(wartosc)
                    wynik = wartosc.lower() in ('true', '1')
                else:
                    wynik = bool(wartosc)
            elif self.typ is int:
                if isinstance(wartosc, bool) or float(wartosc) != int(float(wartosc)):
                    raise ValueError(wartosc)
                wynik = int(float(wartosc))
            else:
                wynik = self.typ(wartosc)
        except (TypeError, ValueError, OverflowError):
            raise BladKonfiguracji(f"Pole '{klucz}': oczekiwano typu {self.typ.__name__}, otrzymano {wartosc!r}")
        if self.wybory is not None and wynik not in self.wybory:
            raise BladKonfiguracji(f"Pole '{klucz}': {wynik!r} spoza dopuszczalnych {list(self.wybory)}")
        if self.minimum is not None and wynik < self.minimum:
            raise BladKonfiguracji(f"Pole '{klucz}': {wynik} < minimum {self.minimum}")
        if self.maksimum is not None and wynik > self.maksimum:
            raise BladKonfiguracji(f"Pole '{klucz}': {wynik} > maksimum {self.maksimum}")
        return wynik


WSPOLNE_POLA: Dict[str, Pole] = {
    "seed": Pole(int, 0, minimum=0, opis="ziarno generatora"),
    "threads": Pole(int, 1, minimum=1, opis="maksymalna liczba procesów"),
    "tol": Pole(float, None, minimum=0.0, opis="tolerancja werdyktów (domyślna zależy od eksperymentu)"),
}


@dataclass
class Eksperyment:
    nazwa: str
    funkcja: Callable[[Dict[str, Any]], Any]
    pola: Dict[str, Pole] = field(default_factory=dict)
    opis: str = ""

    def wszystkie_pola(self) -> Dict[str, Pole]:
        return {**WSPOLNE_POLA, **self.pola}

    def domyslna_konfiguracja(self) -> Dict[str, Any]:
        return {klucz: pole.domyslna for klucz, pole in self.wszystkie_pola().items()}


EKSPERYMENTY: Dict[str, Eksperyment] = {}


def rejestruj(nazwa: str, pola: Optional[Dict[str, Pole]] = None):
    def dekorator(funkcja):
        opis = (funkcja.__doc__ or "").strip().splitlines()
        EKSPERYMENTY[nazwa] = Eksperyment(nazwa, funkcja, dict(pola or {}), opis[0] if opis else "")
        return funkcja
    return dekorator


def nazwy_eksperymentow() -> Sequence[str]:
    return sorted(EKSPERYMENTY)


def pobierz_eksperyment(nazwa: str) -> Eksperyment:
    if nazwa not in EKSPERYMENTY:
        raise BladKonfiguracji(
            f"Nieznany eksperyment: {nazwa} (zarejestrowane: {', '.join(nazwy_eksperymentow())})")
    return EKSPERYMENTY[nazwa]


def zweryfikuj_konfiguracje(eksperyment: Eksperyment, konfiguracja: Dict[str, Any]) -> Dict[str, Any]:
    pola = eksperyment.wszystkie_pola()
    nieznane = sorted(set(konfiguracja) - set(pola))
    if nieznane:
        raise BladKonfiguracji(
            f"Eksperyment {eksperyment.nazwa} nie przyjmuje pól: {nieznane} (dostępne: {sorted(pola)})")
    return {klucz: pole.rzutuj(klucz, konfiguracja.get(klucz)) for klucz, pole in pola.items()}
