import logging
import os
import sys
from datetime import datetime
from typing import Optional

logger = logging.getLogger('fchaos')


def konfiguruj_logowanie(folder_logow: Optional[str] = None, poziom: int = logging.INFO) -> logging.Logger:
    """Konsola zawsze, plik logs/<data>.txt tylko gdy podano folder."""
    logger.setLevel(poziom)
    logger.handlers.clear()
    logger.propagate = False

    obsluga_konsoli = logging.StreamHandler(sys.stdout)
    obsluga_konsoli.setLevel(poziom)
    obsluga_konsoli.setFormatter(logging.Formatter('%(message)s'))
    logger.addHandler(obsluga_konsoli)

    if folder_logow:
        try:
            os.makedirs(folder_logow, exist_ok=True)
            plik_logow = os.path.join(folder_logow, datetime.now().strftime('%Y-%m-%d_%H-%M-%S.txt'))
            obsluga_pliku = logging.FileHandler(plik_logow, encoding='utf-8', mode='w')
            obsluga_pliku.setLevel(poziom)
            obsluga_pliku.setFormatter(
                logging.Formatter('%(asctime)s - %(message)s', datefmt='%Y-%m-%d %H:%M:%S'))
            logger.addHandler(obsluga_pliku)
        except OSError as e:
            print(f"Błąd krytyczny podczas konfiguracji logowania: {e}")
    return logger


def loguj(wiadomosc: str, nowy_akapit: bool = False) -> None:
    if nowy_akapit:
        wiadomosc = "\n" + wiadomosc
    logger.info(wiadomosc)
