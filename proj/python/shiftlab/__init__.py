"""Matrix criteria and bounded search for graph-generated shift spaces.

Thin wrapper over the compiled ``_shiftlab`` core: every command takes the
text of a spec file and returns ``(report, exit_code)`` where ``report`` is
the parsed JSON report and ``exit_code`` follows the CLI convention
(0 definitive, 2 unknown/inconclusive).
"""

import json as _json

try:
    from shiftlab import _shiftlab as _core  # installed layout
except ImportError:  # pragma: no cover - build-tree layout
    import _shiftlab as _core

__all__ = [
    "analyze",
    "nonempty",
    "finite",
    "epairs",
    "higher_block",
    "periodic",
    "oracle",
    "growth",
    "render_spec",
    "digest",
]


def _parsed(raw):
    report, code = raw
    return _json.loads(report), code


def analyze(spec_text, oracle_max=6, run_oracle=True):
    return _parsed(_core.analyze(spec_text, oracle_max, run_oracle))


def nonempty(spec_text, oracle_max=6, run_oracle=True):
    return _parsed(_core.nonempty(spec_text, oracle_max, run_oracle))


def finite(spec_text):
    return _parsed(_core.finite(spec_text))


def epairs(spec_text):
    return _parsed(_core.epairs(spec_text))


def higher_block(spec_text, window):
    return _parsed(_core.higher_block(spec_text, list(window)))


def periodic(spec_text, p, q):
    return _parsed(_core.periodic(spec_text, p, q))


def oracle(spec_text, periods, list_limit=16):
    return _parsed(_core.oracle(spec_text, list(periods), list_limit))


def growth(spec_text, n_max):
    return _parsed(_core.growth(spec_text, n_max))


def render_spec(spec_text):
    return _core.render_spec(spec_text)


def digest(text):
    return _core.digest(text)
