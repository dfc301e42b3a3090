import logging
import time
from pathlib import Path
from typing import Any, Dict, Optional, Union

from eksperymenty import katalog  # noqa: F401  (rejestracja eksperymentów)
from eksperymenty.logowanie import loguj
from eksperymenty.raport import Raport, zapisz_raport
from eksperymenty.rejestr import pobierz_eksperyment, zweryfikuj_konfiguracje

logger = logging.getLogger('fchaos.eksperymenty')


def uruchom_eksperyment(nazwa: str, konfiguracja: Optional[Dict[str, Any]] = None,
                        sciezka: Optional[Union[str, Path]] = None, format: str = 'json') -> Raport:
    """Waliduje konfigurację, uruchamia eksperyment i opcjonalnie zapisuje raport."""
    eksperyment = pobierz_eksperyment(nazwa)
    konfiguracja = zweryfikuj_konfiguracje(eksperyment, konfiguracja or {})
    logger.debug(f"Konfiguracja {nazwa}: {konfiguracja}")

    loguj(f"🔬 EKSPERYMENT: {nazwa}", nowy_akapit=True)
    if eksperyment.opis:
        loguj(f"   {eksperyment.opis}")
    czas_startu = time.perf_counter()
    raport = eksperyment.funkcja(konfiguracja)
    raport.czas_ms = int(round((time.perf_counter() - czas_startu) * 1000))

    for kontrola in raport.kontrole:
        znak = "✅" if kontrola.zaliczona else "❌"
        loguj(f"  {znak} {kontrola.nazwa}: {kontrola.wartosc} (oczekiwano {kontrola.oczekiwana})")
    loguj(f"⏱️  Czas: {raport.czas_ms / 1000:.2f}s")

    if sciezka is not None:
        zapisany = zapisz_raport(raport, sciezka, format)
        loguj(f"📊 Raport zapisany: {zapisany}")
    return raport
