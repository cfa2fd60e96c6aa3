"""Loading inputs from disk: Cayley tables, group names, strong-semilattice blocks.

Strong-semilattice block (lines, ``#`` comments allowed)::

    semilattice 3
    below 0 1          # 0 < 1; the order is the reflexive-transitive closure
    below 1 2
    group 0 C1         # a group name, or a path to a Cayley-table file
    group 1 C2
    group 2 c4.tbl
    link 2 1 : 0 1 0 1 # the map H_2 -> H_1, image of each index in turn

Links missing for a comparable pair are composed along a chain of given ones.
"""

import os
from typing import Dict, List, Optional, Tuple

from .errors import AlgebraError, ParseError
from .groups import FiniteGroup, group_by_name, parse_group
from .semigroups import FiniteSemigroup, StrongSemilatticeLayout, make_strong_semilattice, parse_semigroup


def load_group(source: str) -> FiniteGroup:
    """A path to a Cayley-table file, or a group name such as ``C4`` or ``C2xC4``."""
    if os.path.exists(source):
        with open(source) as fh:
            return parse_group(fh.read())
    try:
        return group_by_name(source)
    except AlgebraError:
        raise ParseError(f"{source!r} is neither a readable file nor a known group name") from None


def _first_word(text: str) -> str:
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            return line.split()[0]
    return ""


def parse_any_semigroup(text: str, base_dir: str = ".") -> FiniteSemigroup:
    if _first_word(text) == "semilattice":
        return parse_strong_semilattice(text, base_dir).semigroup
    return parse_semigroup(text)


def load_semigroup(path: str) -> FiniteSemigroup:
    """A Cayley-table file or a strong-semilattice block; a bare group name is accepted too."""
    if not os.path.exists(path):
        try:
            G = group_by_name(path)
        except AlgebraError:
            raise ParseError(f"cannot open {path!r}") from None
        return FiniteSemigroup(G.table, G.name)
    with open(path) as fh:
        text = fh.read()
    S = parse_any_semigroup(text, os.path.dirname(os.path.abspath(path)))
    if S.name is None:
        S = FiniteSemigroup(S.table, os.path.basename(path))
    return S


def parse_strong_semilattice(text: str, base_dir: str = ".") -> StrongSemilatticeLayout:
    k: Optional[int] = None
    below: List[Tuple[int, int]] = []
    groups: Dict[int, FiniteGroup] = {}
    links: Dict[Tuple[int, int], List[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        try:
            if words[0] == "semilattice":
                k = int(words[1])
            elif words[0] == "below":
                below.append((int(words[1]), int(words[2])))
            elif words[0] == "group":
                e, source = int(words[1]), words[2]
                path = source if os.path.isabs(source) else os.path.join(base_dir, source)
                groups[e] = load_group(path if os.path.exists(path) else source)
            elif words[0] == "link":
                head, _, tail = line.partition(":")
                hw = head.split()
                links[int(hw[1]), int(hw[2])] = [int(v) for v in tail.split()]
            else:
                raise ParseError(f"unknown keyword {words[0]!r}", lineno)
        except ParseError:
            raise
        except (IndexError, ValueError):
            raise ParseError(f"cannot read {line!r}", lineno) from None
    if k is None or k < 1:
        raise ParseError("missing 'semilattice <k>' line")
    leq = [[a == b for b in range(k)] for a in range(k)]
    for a, b in below:
        if not (0 <= a < k and 0 <= b < k):
            raise ParseError(f"order pair ({a},{b}) outside [0,{k})")
        leq[a][b] = True
    for m in range(k):
        for a in range(k):
            for b in range(k):
                if leq[a][m] and leq[m][b]:
                    leq[a][b] = True
    for a in range(k):
        for b in range(k):
            if a != b and leq[a][b] and leq[b][a]:
                raise ParseError(f"order has a cycle through {a} and {b}")
    meet = []
    for a in range(k):
        row = []
        for b in range(k):
            lower = [c for c in range(k) if leq[c][a] and leq[c][b]]
            tops = [c for c in lower if all(leq[d][c] for d in lower)]
            if len(tops) != 1:
                raise ParseError(f"{a} and {b} have no greatest lower bound")
            row.append(tops[0])
        meet.append(tuple(row))
    E = FiniteSemigroup(tuple(meet), "E")
    missing = [e for e in range(k) if e not in groups]
    if missing:
        raise ParseError(f"no group given for idempotent {missing[0]}")
    # compose missing links along chains
    changed = True
    while changed:
        changed = False
        for f in range(k):
            for e in range(k):
                if e == f or not leq[e][f] or (f, e) in links:
                    continue
                for g in range(k):
                    if (f, g) in links and (g, e) in links:
                        links[f, e] = [links[g, e][x] for x in links[f, g]]
                        changed = True
                        break
    try:
        return make_strong_semilattice(E, [groups[e] for e in range(k)], links, "strong semilattice")
    except AlgebraError as exc:
        raise ParseError(str(exc)) from None
