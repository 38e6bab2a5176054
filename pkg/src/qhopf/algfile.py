"""Text format for algebra rule tables.

Grammar (line oriented, '#' starts a comment):

    algebra NAME
    order N
    param KEY RATIONAL          # optional, repeatable
    gen NAME PARITY             # one line per generator, in sort order
    rule LEFT RIGHT             # header for the rewrite LEFT*RIGHT -> ...
      term W1 W2 ... : c0, c1, c2   # word and hbar-polynomial coefficients
      term 1 : c0                   # empty word spelled "1"
    end                         # closes a rule block

Coefficients are Gaussian rationals like ``3/5``, ``-2``, ``1/2-1/3i``;
``c_k`` multiplies hbar**k and trailing zeros are dropped.  Saving is
canonical (sorted rules and terms, normalized rationals), so
load -> save -> load is the identity character for character.
"""

from __future__ import annotations

from typing import Dict, Tuple

from .algebra import AlgebraElement, GradedAlgebra, Monomial
from .scalars import ExactScalar, HbarSeries, parse_rational


def format_scalar(z: ExactScalar) -> str:
    if z.im == 0:
        return str(z.re)
    im = f"{z.im}i" if z.im < 0 else f"+{z.im}i"
    if z.re == 0:
        return f"{z.im}i"
    return f"{z.re}{im}"


def format_series(s: HbarSeries) -> str:
    coeffs = list(s.coeffs)
    while len(coeffs) > 1 and coeffs[-1].is_zero():
        coeffs.pop()
    return ", ".join(format_scalar(c) for c in coeffs)


def save_table(alg: GradedAlgebra, name: str, params: Dict[str, ExactScalar] = None) -> str:
    lines = [f"algebra {name}", f"order {alg.order}"]
    for key in sorted(params or {}):
        lines.append(f"param {key} {format_scalar(params[key])}")
    for gname, parity in zip(alg.names, alg.parities):
        lines.append(f"gen {gname} {parity}")
    for (i, j) in sorted(alg.rules):
        lines.append(f"rule {alg.names[i]} {alg.names[j]}")
        rhs = alg.rules[(i, j)]
        for mono in sorted(rhs.terms, key=lambda m: (m.degree(), m.powers)):
            word = " ".join(
                alg.names[gi] for gi in mono.letters()
            ) or "1"
            lines.append(f"  term {word} : {format_series(rhs.terms[mono])}")
        lines.append("end")
    return "\n".join(lines) + "\n"


def load_table(text: str):
    """Parse the table format; returns (GradedAlgebra, name, params)."""
    name = None
    order = None
    params: Dict[str, ExactScalar] = {}
    gens = []
    rule_blocks = []
    current = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 2)
        head = parts[0]
        if head == "algebra":
            name = parts[1]
        elif head == "order":
            order = int(parts[1])
        elif head == "param":
            key, val = parts[1], parts[2]
            params[key] = parse_rational(val)
        elif head == "gen":
            gens.append((parts[1], int(parts[2])))
        elif head == "rule":
            left, right = parts[1], parts[2].split()[0]
            current = (left, right, [])
        elif head == "term":
            if current is None:
                raise ValueError("term outside of a rule block")
            body = line[len("term"):].strip()
            word_part, _, coeff_part = body.partition(":")
            letters = word_part.split()
            if letters == ["1"]:
                letters = []
            coeffs = [parse_rational(tok) for tok in coeff_part.split(",")]
            current[2].append((letters, coeffs))
        elif head == "end":
            rule_blocks.append(current)
            current = None
        else:
            raise ValueError(f"unrecognized line: {raw!r}")
    if order is None or not gens:
        raise ValueError("file must declare an order and generators")
    alg = GradedAlgebra([g for g, _ in gens], [p for _, p in gens], order)
    for left, right, terms in rule_blocks:
        rhs = alg.zero()
        for letters, coeffs in terms:
            word = tuple(alg.index[n] for n in letters)
            mono = alg._word_to_monomial(word)
            rhs = rhs + alg.monomial_element(mono, HbarSeries(coeffs, order))
        alg.add_rule(left, right, rhs)
    return alg, name, params
