from typing import Optional


class BladSilnika(ValueError):
    pass


class NiezgodnoscSiatek(BladSilnika):
    pass


class BladZakresu(BladSilnika):
    pass


class BladSymetrii(BladSilnika):
    pass


class BladKonfiguracji(BladSilnika):
    pass


class PrzekroczonyLimit(BladSilnika):
    def __init__(self, opis: str, wymagane: int, limit: int, wskazowka: Optional[str] = None):
        self.opis = opis
        self.wymagane = wymagane
        self.limit = limit
        wiadomosc = f"{opis}: wymagane {wymagane:,} przekracza limit {limit:,}"
        if wskazowka:
            wiadomosc += f" ({wskazowka})"
        super().__init__(wiadomosc)
