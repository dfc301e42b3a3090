import argparse
import logging
import sys
from typing import Dict, List, Optional

from rachunek import __version__
from rachunek.bledy import BladKonfiguracji, BladSilnika
from eksperymenty.logowanie import konfiguruj_logowanie, loguj
from eksperymenty.raport import FORMATY
from eksperymenty.rejestr import EKSPERYMENTY, nazwy_eksperymentow
from eksperymenty.uruchamianie import uruchom_eksperyment

KOD_SUKCESU = 0
KOD_BLEDU = 1
KOD_NIEUDANYCH_KONTROLI = 2

# flaga -> klucz konfiguracji eksperymentu
POLA_EKSPERYMENTU = (
    "seed", "threads", "tol", "T", "N", "order", "kind", "k_max", "d",
    "trials", "pairs", "depth", "components", "kernels", "max_order",
)


class ParserArgumentow(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: błąd: {message}", file=sys.stderr)
        raise SystemExit(KOD_BLEDU)


def zbuduj_parser() -> ParserArgumentow:
    parser = ParserArgumentow(
        prog="fchaos",
        description="Silnik wolnego chaosu: kontrakcje, kryteria wolności i eksperymenty kontrolne.")
    parser.add_argument("--experiment", help="nazwa eksperymentu (zob. --list)")
    parser.add_argument("--out", help="ścieżka zapisu raportu")
    parser.add_argument("--format", default="json", choices=FORMATY, help="format raportu")
    parser.add_argument("--list", action="store_true", help="wypisz zarejestrowane eksperymenty")
    parser.add_argument("--verbose", action="store_true", help="logi na poziomie DEBUG")
    parser.add_argument("--log-dir", help="folder na pliki logów")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    # wartości trafiają do rejestru jako tekst; tam są rzutowane i walidowane
    grupa = parser.add_argument_group("konfiguracja eksperymentu")
    for pole in POLA_EKSPERYMENTU:
        grupa.add_argument("--" + pole.replace("_", "-"), dest=pole, default=None)
    return parser


def konfiguracja_z_argumentow(argumenty: argparse.Namespace) -> Dict[str, str]:
    return {pole: getattr(argumenty, pole) for pole in POLA_EKSPERYMENTU
            if getattr(argumenty, pole) is not None}


def wydrukuj_liste_eksperymentow() -> None:
    print("📋 Zarejestrowane eksperymenty:")
    for nazwa in nazwy_eksperymentow():
        eksperyment = EKSPERYMENTY[nazwa]
        pola = ", ".join(sorted(eksperyment.pola)) or "-"
        print(f"   - {nazwa:<24} {eksperyment.opis}")
        print(f"     {'':<24} pola: {pola}")


def main(argv: Optional[List[str]] = None) -> int:
    parser = zbuduj_parser()
    argumenty = parser.parse_args(argv)

    if argumenty.list:
        wydrukuj_liste_eksperymentow()
        return KOD_SUKCESU
    if not argumenty.experiment:
        parser.error("wymagany jest argument --experiment (lub --list)")

    konfiguruj_logowanie(argumenty.log_dir, logging.DEBUG if argumenty.verbose else logging.INFO)
    try:
        raport = uruchom_eksperyment(argumenty.experiment, konfiguracja_z_argumentow(argumenty),
                                     argumenty.out, argumenty.format)
    except BladKonfiguracji as e:
        loguj(f"❌ Błędna konfiguracja: {e}")
        return KOD_BLEDU
    except BladSilnika as e:
        loguj(f"❌ {argumenty.experiment}: {type(e).__name__}: {e}")
        return KOD_BLEDU
    except ValueError as e:
        loguj(f"❌ Błędne ustawienia silnika: {e}")
        return KOD_BLEDU

    if raport.czy_zaliczony:
        loguj(f"✅ {raport.eksperyment}: wszystkie kontrole zaliczone ({len(raport.kontrole)})")
        return KOD_SUKCESU
    nieudane = raport.nieudane_kontrole()
    loguj(f"❌ {raport.eksperyment}: nieudane kontrole {len(nieudane)}/{len(raport.kontrole)}: "
          f"{', '.join(k.nazwa for k in nieudane)}")
    return KOD_NIEUDANYCH_KONTROLI


if __name__ == "__main__":
    sys.exit(main())
