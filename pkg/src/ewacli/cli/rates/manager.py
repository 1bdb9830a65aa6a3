from __future__ import annotations

from typing import List

from ewacli.engine.rates import RateKind, rate_bound, theory_preset


class RatesManager:
    def table(self, n: int, d: int, s_star: int, eps: float, margin_c: float) -> List[dict]:
        rows = []
        for kind in RateKind:
            preset = theory_preset(kind, n, d, s_star, margin_c)
            rows.append(
                {
                    "kind": kind.value,
                    "rate": rate_bound(n, d, s_star, eps, kind),
                    "lam": preset.lam,
                    "tau": preset.tau,
                }
            )
        return rows
