"""Compiled 2-IDP/k-IDP instances together with where every vertex came from."""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from typing import Any

from ..graph import IdpInstance
from ..io import dumps_text, from_dict, to_dict

ROLE_RE = re.compile(r"^[a-z]+:[A-Za-z0-9+\-'~_]+(\[[0-9,]*\])?$")


class ProvenanceError(ValueError):
    pass


def role(gadget: str, name: str, *indices: int) -> str:
    s = f"{gadget}:{name}"
    if indices:
        s += "[" + ",".join(str(i) for i in indices) + "]"
    return s


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass
class ReductionArtifact:
    instance: IdpInstance
    provenance: tuple[str, ...]
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.provenance = tuple(self.provenance)
        if len(self.provenance) != self.instance.graph.n:
            raise ProvenanceError(
                f"{len(self.provenance)} provenance entries for {self.instance.graph.n} vertices"
            )
        for v, r in enumerate(self.provenance):
            if not ROLE_RE.match(r):
                raise ProvenanceError(f"vertex {v}: malformed role {r!r}")
        exp = self.meta.get("expected_answer")
        if exp is not None and self.meta.get("expected_source") not in ("oracle", "witness"):
            raise ProvenanceError("expected_answer needs expected_source 'oracle' or 'witness'")

    @property
    def expected_answer(self) -> bool | None:
        return self.meta.get("expected_answer")

    def vertices_with_role(self, pattern: str) -> list[int]:
        rx = re.compile(pattern)
        return [v for v, r in enumerate(self.provenance) if rx.fullmatch(r)]

    def find(self, r: str) -> int:
        """The unique vertex carrying role ``r``."""
        hits = [v for v, x in enumerate(self.provenance) if x == r]
        if len(hits) != 1:
            raise KeyError(f"{len(hits)} vertices with role {r!r}")
        return hits[0]

    def instance_text(self) -> str:
        return dumps_text(self.instance)

    def sidecar(self) -> dict[str, Any]:
        return {"provenance": list(self.provenance), "meta": self.meta}

    def to_dict(self) -> dict[str, Any]:
        return {"instance": to_dict(self.instance), **self.sidecar()}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> ReductionArtifact:
        inst = from_dict(d["instance"])
        if not isinstance(inst, IdpInstance):
            raise ProvenanceError("artifact payload carries no terminal pairs")
        return cls(inst, tuple(d["provenance"]), dict(d.get("meta", {})))

    def dumps_sidecar(self) -> str:
        return json.dumps(self.sidecar(), sort_keys=True, indent=1) + "\n"
