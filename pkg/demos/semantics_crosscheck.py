"""Three independent routes to the same conclusions.

The worklist engine, the 3-valued fixpoint of the translated logic program,
and the all-models consequences must coincide; this script shows all three
agreeing on a handful of instructive theories and then fuzzes fresh random
ones.

Run:  python demos/semantics_crosscheck.py [seed]
"""

import sys

from dlog import derive_all, fuzz, ground, logical_consequences, parse_theory, translate
from dlog.metaprogram import conclusions as meta_conclusions

SHOWCASE = [
    ("unresolved conflict", "r1: => p. r2: => ~p."),
    ("resolved by superiority", "r1: => p. r2: => ~p. r1 > r2."),
    ("team defeat", "r1: => p. r2: => p. s1: => ~p. s2: => ~p. r1 > s1. r2 > s2."),
    ("self-support loop", "r: p => p."),
    ("paraconsistency", "a. ~a. r: b -> b."),
]


def main():
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
    for name, text in SHOWCASE:
        g = ground(parse_theory(text))
        from_engine = derive_all(g)
        from_meta = meta_conclusions(g)
        from_models = logical_consequences(g)
        agree = from_engine == from_meta == from_models
        print(f"{name}: {'agree' if agree else 'DIVERGE'}")
        for c in from_engine:
            print(f"    {c.tag.display} {c.literal}")
        if name == "self-support loop":
            print("    (p itself is undefined at the defeasible level)")
    print()

    print("the logic program behind the loop theory:")
    print(translate(ground(parse_theory("r: p => p."))).render())

    n = 200
    print(f"fuzzing {n} random theories from seed {seed} ...")
    witnesses = fuzz(n, seed=seed)
    if witnesses:
        for w in witnesses:
            print(w)
        sys.exit(1)
    print("no divergence found")


if __name__ == "__main__":
    main()
