#!/usr/bin/env python3
"""Writes grammars/synthetic200.peg, a 200-rule well-formed grammar.

Rule i only calls rules with a larger index directly; calls back to lower
indices are always guarded by a consumed token, so the grammar has no left
recursion. Deterministic for a given seed.
"""
import argparse
import random

KEYWORDS = ["let", "in", "fun", "case", "of", "end", "if", "then", "else", "while", "do", "ret"]
PUNCT = ["(", ")", "[", "]", "{", "}", ",", ";", ":", "=", "+", "-", "*", "/", "<", ">"]


def quote(s):
    return "'" + s.replace("\\", "\\\\").replace("'", "\\'") + "'"


def atom(rng, i, n):
    r = rng.random()
    if r < 0.35 and i + 1 < n:
        return f"r{rng.randrange(i + 1, n)}"
    if r < 0.55:
        return quote(rng.choice(KEYWORDS)) + " ![a-z] ws"
    if r < 0.75:
        return quote(rng.choice(PUNCT)) + " ws"
    if r < 0.85:
        return "ident"
    if r < 0.95:
        return "number"
    # Guarded call to an earlier rule.
    return f"'(' ws r{rng.randrange(0, i + 1)} ')' ws"


def postfix(rng, text):
    r = rng.random()
    if r < 0.15:
        return f"({text})*"
    if r < 0.25:
        return f"({text})?"
    if r < 0.30:
        return f"!({text})"
    return text


def body(rng, i, n):
    alts = []
    for _ in range(rng.randint(1, 3)):
        items = []
        first = True
        for _ in range(rng.randint(1, 4)):
            a = atom(rng, i, n)
            # The first item of an alternative must consume input, so it is
            # never wrapped in an operator that can succeed on empty input.
            items.append(a if first else postfix(rng, a))
            first = False
        alts.append(" ".join(items))
    alts.append(quote(rng.choice(KEYWORDS)) + " ![a-z] ws")
    return "\n    / ".join(alts)


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--rules", type=int, default=200)
    p.add_argument("--seed", type=int, default=200)
    p.add_argument("--out", default="grammars/synthetic200.peg")
    args = p.parse_args()
    rng = random.Random(args.seed)
    n = args.rules - 5
    out = ["# Generated by tools/gen_synthetic.py; do not edit.", "", "program <- ws r0+ !. ;", ""]
    for i in range(n):
        out.append(f"r{i} <- {body(rng, i, n)} ;")
    out += [
        "",
        "ident  <- !keyword [a-z] [a-z0-9_]* ws ;",
        "number <- [0-9]+ ws ;",
        "keyword <- (" + " / ".join(quote(k) for k in KEYWORDS) + ") ![a-z] ;",
        "ws     <- [ \\t\\r\\n]* ;",
    ]
    with open(args.out, "w") as f:
        f.write("\n".join(out) + "\n")


if __name__ == "__main__":
    main()
