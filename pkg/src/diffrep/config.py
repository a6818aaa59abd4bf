"""Process-wide settings (derivative-order cap, Groebner cross-checking)."""
import os
from dataclasses import dataclass


@dataclass
class Config:
    order_cap: int = 12
    groebner_fallback: bool = False
    seed: int = 0
    emit: str = "text"

    def __post_init__(self):
        if self.order_cap < 4:
            raise ValueError("order_cap must be at least 4")


def _from_env() -> Config:
    cap = os.environ.get("DIFFALG_ORDER_CAP")
    return Config(order_cap=int(cap)) if cap else Config()


config = _from_env()
