import os
import sys
import time
from datetime import datetime
from typing import Any, Dict, List, Optional

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from rachunek import __version__  # noqa: E402
from rachunek.bledy import BladSilnika  # noqa: E402
from eksperymenty.logowanie import konfiguruj_logowanie, loguj  # noqa: E402
from eksperymenty.rejestr import nazwy_eksperymentow  # noqa: E402
from eksperymenty.uruchamianie import uruchom_eksperyment  # noqa: E402

# Konfiguracje na skalę biurka; pozostałe eksperymenty z wartościami domyślnymi
KONFIGURACJE_BIURKOWE: Dict[str, Dict[str, Any]] = {
    "freeness-battery": {"pairs": 20, "depth": 6},
    "transfer-battery": {"pairs": 40},
    "sequence-4": {"k_max": 16},
    "joint-convergence-4.5": {"k_max": 16},
    "gue-crosscheck": {"d": 300, "trials": 10, "kernels": 6, "k_max": 4},
}


class EwaluatorSilnika:

    def __init__(self, folder_raportow: Optional[str] = None, watki: int = 1):
        self.folder_raportow = folder_raportow
        self.watki = watki
        self.meta_dane_ewaluacji = {
            'czas_startu': datetime.now(),
            'liczba_eksperymentow': 0,
            'bledy': 0,
        }

    def ewaluuj_eksperyment(self, nazwa: str, konfiguracja: Dict[str, Any]) -> Dict:
        konfiguracja = dict(konfiguracja)
        if nazwa == "gue-crosscheck":
            konfiguracja.setdefault("threads", self.watki)
        sciezka = None
        if self.folder_raportow:
            sciezka = os.path.join(self.folder_raportow, f"{nazwa}.json")

        czas_startu = time.perf_counter()
        self.meta_dane_ewaluacji['liczba_eksperymentow'] += 1
        try:
            raport = uruchom_eksperyment(nazwa, konfiguracja, sciezka)
        except BladSilnika as e:
            self.meta_dane_ewaluacji['bledy'] += 1
            loguj(f"⚠️  {nazwa}: {type(e).__name__}: {e}")
            return self._kompiluj_wyniki(nazwa, None, time.perf_counter() - czas_startu, blad=str(e))
        return self._kompiluj_wyniki(nazwa, raport, time.perf_counter() - czas_startu)

    def _kompiluj_wyniki(self, nazwa: str, raport, czas_trwania: float, blad: Optional[str] = None) -> Dict:
        if raport is None:
            return {
                'nazwa': nazwa, 'zaliczone': 0, 'kontrole': 0, 'procent_zaliczonych': 0.0,
                'czas_trwania': czas_trwania, 'ocena': "BŁĄD", 'nieudane': [], 'blad': blad,
            }
        zaliczone = sum(1 for k in raport.kontrole if k.zaliczona)
        lacznie = len(raport.kontrole)
        return {
            'nazwa': nazwa,
            'zaliczone': zaliczone,
            'kontrole': lacznie,
            'procent_zaliczonych': 100.0 * zaliczone / lacznie if lacznie else 100.0,
            'czas_trwania': czas_trwania,
            'ocena': "DOSKONAŁY" if raport.czy_zaliczony else "NIEDOSKONAŁY",
            'nieudane': [k.nazwa for k in raport.nieudane_kontrole()],
            'blad': None,
        }

    def _wyswietl_wyniki_koncowe(self, podsumowanie: List[Dict]):
        loguj("=" * 80, nowy_akapit=True)
        loguj(f"📋 PODSUMOWANIE EWALUACJI SILNIKA v{__version__}")
        loguj("=" * 80)

        loguj(f"\n{'Eksperyment':<26} {'Kontrole':<10} {'% Zaliczonych':<15} {'Ocena':<15} {'Czas (s)':<10}")
        loguj("-" * 80)
        for wyniki in podsumowanie:
            loguj(f"{wyniki['nazwa']:<26} "
                  f"{wyniki['zaliczone']:>3}/{wyniki['kontrole']:<5} "
                  f"{wyniki['procent_zaliczonych']:>11.1f}%   "
                  f"{wyniki['ocena']:<15} "
                  f"{wyniki['czas_trwania']:>8.2f}")

        nieudane = [w for w in podsumowanie if w['ocena'] != "DOSKONAŁY"]
        loguj("🏆 OCENA OGÓLNA:", nowy_akapit=True)
        if not nieudane:
            loguj("   ✅ DOSKONAŁY: wszystkie eksperymenty kontrolne zgodne z oczekiwaniami.")
        else:
            for wyniki in nieudane:
                if wyniki['blad']:
                    loguj(f"   ❌ {wyniki['nazwa']}: {wyniki['blad']}")
                else:
                    loguj(f"   ❌ {wyniki['nazwa']}: {', '.join(wyniki['nieudane'])}")

        czas = datetime.now() - self.meta_dane_ewaluacji['czas_startu']
        loguj(f"\n⏰ Zakończono ewaluację: {datetime.now().strftime('%H:%M:%S')} "
              f"(łącznie {czas.total_seconds():.1f}s)")
        loguj("=" * 80)


def main() -> int:
    folder_skryptu = os.path.dirname(os.path.abspath(__file__))
    konfiguruj_logowanie(os.path.join(folder_skryptu, 'logs'))

    loguj("🔬 EWALUACJA SILNIKA WOLNEGO CHAOSU")
    loguj(f"⏱️  Rozpoczęto: {datetime.now().strftime('%H:%M:%S')}")

    ewaluator = EwaluatorSilnika(folder_raportow=os.path.join(folder_skryptu, 'raporty'),
                                 watki=max(1, (os.cpu_count() or 1) // 2))
    podsumowanie = [ewaluator.ewaluuj_eksperyment(nazwa, KONFIGURACJE_BIURKOWE.get(nazwa, {}))
                    for nazwa in nazwy_eksperymentow()]
    ewaluator._wyswietl_wyniki_koncowe(podsumowanie)
    return 0 if all(w['ocena'] == "DOSKONAŁY" for w in podsumowanie) else 2


if __name__ == "__main__":
    sys.exit(main())
