"""Exact Choquet-theory analyses of finite vector-valued function spaces.

Problems are given as JSON text, a path to a JSON file, or the name of a bundled fixture.
Rationals travel as strings such as "3/2".
"""

import json
from typing import Iterable, Optional, Sequence

from . import _core
from ._core import ChoquetError

__all__ = ["ChoquetError", "run", "verify_corpus", "fixtures", "fixture_document"]


def _strings(values: Optional[Iterable]) -> Optional[list]:
    return None if values is None else [str(v) for v in values]


def run(
    command: str,
    source: str,
    *,
    point: Optional[str] = None,
    functional: Optional[Sequence] = None,
    mode: str = "",
    measures: Sequence[str] = (),
    probes: Sequence = (),
) -> dict:
    """Run one analysis and return the report {command, input_digest, exit_code, result}."""
    text = _core.run(
        command,
        source,
        point=point,
        functional=_strings(functional),
        mode=mode,
        measures=list(measures),
        probes=[(str(p), _strings(x)) for p, x in probes],
    )
    return json.loads(text)


def verify_corpus(fixture: Optional[str] = None) -> dict:
    """Check the bundled fixtures' expectation tables."""
    return json.loads(_core.verify_corpus(fixture))


def fixtures() -> list:
    """(name, in_scope, note) for every bundled fixture."""
    return _core.fixtures()


def fixture_document(name: str) -> dict:
    return json.loads(_core.fixture_document(name))
