"""Differential testing of the three semantics against each other, plus the
chain-theory families used for scaling measurements.

Any disagreement between the engine, the metaprogram fixpoint, and the
all-models consequences on a theory is a falsifying witness for one of the
soundness/completeness theorems the artifact rests on, so a witness is a
hard failure: it carries the rendered theory and is re-runnable as-is.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Optional

from . import engine, metaprogram, modelcheck
from .core import (
    ConclusionSet,
    GroundTheory,
    Literal,
    Rule,
    RuleKind,
    SourceTheory,
    Tag,
    TaggedConclusion,
    ground,
    lit,
    neg,
    validate,
)
from .parser import render_theory


def generate_random_theory(
    seed: int, max_atoms: int, max_rules: int
) -> SourceTheory:
    """A random ground propositional theory, fully determined by the seed.

    Atoms are drawn from a pool of at most `max_atoms` propositions; bodies
    use both signs; all three rule kinds occur.  Superiority pairs are drawn
    over conflicting-head rules only and oriented from lower to higher rule
    index, which keeps the relation acyclic by construction.
    """
    if max_atoms < 1:
        raise ValueError("max_atoms must be at least 1")
    rng = random.Random(seed)
    atoms = [f"p{i}" for i in range(rng.randint(1, max_atoms))]

    def random_literal() -> Literal:
        name = rng.choice(atoms)
        return lit(name) if rng.random() < 0.5 else neg(name)

    facts = []
    for _ in range(rng.randint(0, 2)):
        f = random_literal()
        if f not in facts:
            facts.append(f)
    rules = []
    for i in range(rng.randint(0, max_rules)):
        kind = rng.choice(list(RuleKind))
        body = []
        for _ in range(rng.randint(0, 2)):
            a = random_literal()
            if a not in body:
                body.append(a)
        rules.append(Rule(f"r{i}", kind, tuple(body), random_literal()))
    superiority = []
    for i, hi in enumerate(rules):
        for lo in rules[i + 1:]:
            if hi.head == lo.head.complement() and rng.random() < 0.4:
                superiority.append((hi.label, lo.label))
    return SourceTheory(tuple(facts), tuple(rules), tuple(superiority))


@dataclass(frozen=True)
class DivergenceWitness:
    theory_text: str
    engine_conclusions: ConclusionSet
    metaprogram_conclusions: ConclusionSet
    model_conclusions: Optional[ConclusionSet]
    disagreements: tuple[TaggedConclusion, ...]

    def __str__(self) -> str:
        lines = ["semantics diverge on theory:", self.theory_text.rstrip()]
        lines += [f"  disagrees: {c}" for c in self.disagreements]
        return "\n".join(lines)


def compare_semantics(
    theory: SourceTheory,
    include_models: bool = True,
    cap: Optional[int] = None,
) -> Optional[DivergenceWitness]:
    """Run the theory through all semantics and return a witness on any
    disagreement, None when they coincide."""
    g = ground(theory)
    validate(g)
    from_engine = engine.derive_all(g)
    from_meta = metaprogram.conclusions(g)
    from_models = (
        modelcheck.logical_consequences(g, cap) if include_models else None
    )
    results = [from_meta] + ([from_models] if include_models else [])
    disagreements: set[TaggedConclusion] = set()
    for other in results:
        for c in set(from_engine) ^ set(other):
            disagreements.add(c)
    if not disagreements:
        return None
    return DivergenceWitness(
        theory_text=render_theory(theory),
        engine_conclusions=from_engine,
        metaprogram_conclusions=from_meta,
        model_conclusions=from_models,
        disagreements=tuple(sorted(disagreements, key=str)),
    )


def fuzz(
    count: int,
    seed: int,
    max_atoms: int = 3,
    max_rules: int = 10,
    include_models: bool = True,
    cap: Optional[int] = None,
) -> list[DivergenceWitness]:
    """Compare the semantics on `count` seeded random theories."""
    witnesses = []
    for i in range(count):
        theory = generate_random_theory(seed + i, max_atoms, max_rules)
        w = compare_semantics(theory, include_models=include_models, cap=cap)
        if w is not None:
            witnesses.append(w)
    return witnesses


def chain_theory(n: int, attack_every: int = 10) -> GroundTheory:
    """A defeasible chain p0 => p1 => ... => pn with periodic attacks.

    The fact p0 starts the chain; every `attack_every` steps an empty-bodied
    attacker for ~pi is added together with a superiority statement in favour
    of the chain rule, so clause (2.3) is exercised along the way while
    +d pn stays derivable.  Structure grows linearly with n.
    """
    facts = (lit("p0"),)
    rules = []
    superiority = []
    for i in range(1, n + 1):
        label = f"c{i}"
        rules.append(Rule(label, RuleKind.DEFEASIBLE, (lit(f"p{i-1}"),), lit(f"p{i}")))
        if attack_every and i % attack_every == 0:
            attacker = f"a{i}"
            rules.append(Rule(attacker, RuleKind.DEFEASIBLE, (), neg(f"p{i}")))
            superiority.append((label, attacker))
    return ground(SourceTheory(facts, tuple(rules), tuple(superiority)))


@dataclass(frozen=True)
class BenchPoint:
    size: int
    seconds: float
    conclusions: int


def bench_chain(
    sizes: tuple[int, ...], attack_every: int = 10, repeats: int = 3
) -> list[BenchPoint]:
    """Time `derive_all` on chain theories of the given sizes and sanity-check
    that the end of each chain is defeasibly proved.

    Runs are interleaved across sizes, each size is timed `repeats` times, and
    the fastest run per size is reported; scaling ratios from single runs are
    dominated by allocator and scheduler noise.
    """
    theories = [chain_theory(n, attack_every) for n in sizes]
    best: list[Optional[float]] = [None] * len(sizes)
    counts = [0] * len(sizes)
    for _ in range(max(1, repeats)):
        for i, g in enumerate(theories):
            start = time.perf_counter()
            conclusions = engine.derive_all(g)
            elapsed = time.perf_counter() - start
            if best[i] is None or elapsed < best[i]:
                best[i] = elapsed
            counts[i] = len(conclusions)
            end = TaggedConclusion(Tag.PLUS_PARTIAL, lit(f"p{sizes[i]}"))
            if end not in conclusions:
                raise AssertionError(
                    f"chain of {sizes[i]} failed to prove its last link"
                )
    return [
        BenchPoint(n, best[i], counts[i]) for i, n in enumerate(sizes)
    ]
