"""Regenerates the fixture suite. Output is deterministic for a fixed seed."""

import json
import random
from pathlib import Path

HERE = Path(__file__).parent
EPSILONS = [0.05, 0.1, 0.2]


def utility(rng, family):
    c = round(rng.uniform(0.5, 3.0), 2)
    if family == "shifted_power":
        rho = rng.choice([0.25, 0.5, 0.75])
        return {"family": family, "params": {"c": c, "rho": rho, "kappa": 1.0}}
    return {"family": family, "params": {"c": c}}


def producer(rng, m, q, eps, primaries):
    """Rows hold one good, or a primary good plus a secondary that costs
    8-12 times as much capacity, so optimal plans sit at clear vertices."""
    goods = list(range(m))
    rng.shuffle(goods)
    rows = min(3, m)
    groups = [[] for _ in range(rows)]
    for idx, j in enumerate(goods):
        groups[idx % rows].append(j)
    constraints = []
    for g in groups:
        coeffs = [0.0] * m
        base = round(rng.uniform(0.5, 1.5), 2)
        coeffs[g[0]] = base
        primaries.add(g[0])
        for j in g[1:]:
            coeffs[j] = round(base * rng.uniform(8.0, 12.0), 2)
        need = sum(coeffs) * eps / q
        cap = max(round(rng.uniform(2.0, 6.0), 1), round(2 * need + 0.5, 1))
        constraints.append({"coeffs": coeffs, "capacity": cap})
    return constraints


def scenario(rng, name, n, m, q, families, eps):
    goods = [f"g{j}" for j in range(m)]
    consumers = []
    wanted = set()
    for i in range(n):
        picks = sorted(rng.sample(range(m), rng.randint(1, m)))
        wanted.update(picks)
        utils = [dict(good=j, **utility(rng, rng.choice(families))) for j in picks]
        consumers.append({"name": f"c{i}", "endowment": rng.choice([1, 1.5, 2, 3, 4]), "utilities": utils})
    for j in range(m):
        if j not in wanted:
            consumers[j % n]["utilities"].append(dict(good=j, **utility(rng, "log")))
            consumers[j % n]["utilities"].sort(key=lambda u: u["good"])
    while True:
        primaries = set()
        producers = [{"name": f"p{s}", "constraints": producer(rng, m, q, eps, primaries)} for s in range(q)]
        if len(primaries) == m:
            break
    return {
        "schema": "prodauction.scenario/1",
        "name": name,
        "goods": goods,
        "consumers": consumers,
        "producers": producers,
        "config": {"epsilon": eps},
    }


SHAPES = [
    (1, 1, 1), (2, 1, 1), (1, 2, 1), (2, 2, 1), (2, 2, 2), (3, 2, 1), (2, 3, 1), (3, 3, 2),
    (4, 2, 2), (3, 3, 3), (5, 2, 1), (2, 4, 2), (4, 3, 2), (3, 4, 3), (5, 3, 2), (4, 4, 2),
    (5, 4, 3), (3, 5, 2), (5, 5, 3), (4, 5, 5), (2, 2, 3), (1, 3, 2),
]
FAMILY_SETS = [["log"], ["shifted_power"], ["log", "shifted_power"], ["linear", "log"],
               ["linear", "log", "shifted_power"]]


def main():
    rng = random.Random(20240611)
    for idx, (n, m, q) in enumerate(SHAPES):
        families = FAMILY_SETS[idx % len(FAMILY_SETS)]
        eps = EPSILONS[idx % len(EPSILONS)]
        name = f"mix_{idx:02d}_n{n}m{m}q{q}"
        doc = scenario(rng, name, n, m, q, families, eps)
        (HERE / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n")


if __name__ == "__main__":
    main()
