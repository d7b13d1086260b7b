"""Single-token mutations of certificate transcripts."""

import copy
import re

from towerlift.certificates import digest_of

TOKEN = re.compile(r"\d+|[A-Za-z_][A-Za-z_0-9]*|\S")


def _leaves(obj, path=()):
    if isinstance(obj, dict):
        for k in sorted(obj):
            if k == "id":
                continue
            yield from _leaves(obj[k], path + (k,))
    elif isinstance(obj, list):
        for i, x in enumerate(obj):
            yield from _leaves(x, path + (i,))
    elif isinstance(obj, (str, int)) and not isinstance(obj, bool):
        yield path, obj


def _mutate_string(s: str, rng) -> str | None:
    toks = [(m.start(), m.group()) for m in TOKEN.finditer(s)]
    rng.shuffle(toks)
    for pos, tok in toks:
        if tok.isdigit():
            new = str(int(tok) + rng.randint(1, 5))
        elif tok in "+-":
            new = "-" if tok == "+" else "+"
        elif tok[0].isalpha():
            new = rng.choice([v for v in ("x1", "x2", "y1", "z1", "t", "f") if v != tok])
        else:
            continue
        out = s[:pos] + new + s[pos + len(tok):]
        if out != s:
            return out
    return None


def mutate(cert: dict, rng, reseal: bool = False):
    """Change one token in one transcript field; returns (cert, transcript id, path)."""
    ts = cert["transcripts"]
    order = list(range(len(ts)))
    rng.shuffle(order)
    for ti in order:
        leaves = list(_leaves(ts[ti]))
        rng.shuffle(leaves)
        for path, val in leaves:
            if isinstance(val, int):
                new = val + rng.choice([-1, 1])
            else:
                new = _mutate_string(val, rng)
                if new is None:
                    continue
            out = copy.deepcopy(cert)
            node = out["transcripts"][ti]
            for p in path[:-1]:
                node = node[p]
            node[path[-1]] = new
            if reseal:
                out["digest"] = digest_of(out)
            return out, ts[ti]["id"], path
    raise ValueError("nothing to mutate")
