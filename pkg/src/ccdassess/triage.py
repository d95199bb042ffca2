"""Tiered asset triage: regional/asset evidence -> restoration decision.

The flow is a small explicit state machine::

    THREAT_IDENTIFIED -> ADEQUACY_CHECK --adequate--> CONNECTIVITY_CHECK
                               |                         |-- accessible --> PROCEED_TO_RESTORATION
                               |                         `-- blocked -----> ASSESS_CONNECTIVITY_FIRST
                               `--not adequate--> ESCALATION_CHECK
                                                        |-- graded evidence --> ESCALATE_TO_COMPONENT_LEVEL
                                                        `-- no evidence ------> SEEK_BETTER_DATA

Every transition is recorded so a decision can be replayed and audited.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

from .classify import DLClass, LKnClass
from .errors import ConfigError, InconsistentConnectivity


class State(enum.Enum):
    THREAT_IDENTIFIED = "ThreatIdentified"
    ADEQUACY_CHECK = "AdequacyCheck"
    CONNECTIVITY_CHECK = "ConnectivityCheck"
    ESCALATION_CHECK = "EscalationCheck"
    PROCEED_TO_RESTORATION = "ProceedToRestoration"
    ASSESS_CONNECTIVITY_FIRST = "AssessConnectivityFirst"
    ESCALATE_TO_COMPONENT_LEVEL = "EscalateToComponentLevel"
    SEEK_BETTER_DATA = "SeekBetterData"

    @property
    def terminal(self):
        return self in TERMINAL


Verdict = State
TERMINAL = frozenset({State.PROCEED_TO_RESTORATION, State.ASSESS_CONNECTIVITY_FIRST,
                      State.ESCALATE_TO_COMPONENT_LEVEL, State.SEEK_BETTER_DATA})

# external high-resolution sources to consult after escalation
COMPONENT_IMAGERY_SOURCES = ("open-access high-resolution optical imagery",
                             "crowdsourced ground photographs")


@dataclass(frozen=True)
class TriagePolicy:
    min_lkn_for_adequacy: LKnClass = LKnClass.MEDIUM
    escalate_on_dl: frozenset = frozenset({DLClass.HIGH, DLClass.MODERATE})

    def to_dict(self):
        return {
            "min_lkn_for_adequacy": self.min_lkn_for_adequacy.label,
            "escalate_on_dl": sorted(d.label for d in self.escalate_on_dl),
        }

    @classmethod
    def from_dict(cls, d):
        unknown = set(d) - {"min_lkn_for_adequacy", "escalate_on_dl"}
        if unknown:
            raise ConfigError(f"policy: unknown keys {sorted(unknown)}")
        kw = {}
        if "min_lkn_for_adequacy" in d:
            kw["min_lkn_for_adequacy"] = LKnClass.from_name(d["min_lkn_for_adequacy"])
        if "escalate_on_dl" in d:
            kw["escalate_on_dl"] = frozenset(DLClass.from_name(x) for x in d["escalate_on_dl"])
        return cls(**kw)


@dataclass(frozen=True)
class ConnectivityInfo:
    asset_accessible: bool = True
    route_assessments: tuple = ()

    def __post_init__(self):
        routes = tuple((str(r), dl if isinstance(dl, DLClass) else DLClass.from_name(dl))
                       for r, dl in self.route_assessments)
        object.__setattr__(self, "route_assessments", routes)

    def to_dict(self):
        return {"asset_accessible": self.asset_accessible,
                "routes": [{"route_id": r, "dl": dl.label}
                           for r, dl in self.route_assessments]}

    @classmethod
    def from_dict(cls, d):
        if "asset_accessible" not in d:
            raise ConfigError("connectivity: 'asset_accessible' is required")
        routes = tuple((r["route_id"], r["dl"]) for r in d.get("routes", ()))
        return cls(bool(d["asset_accessible"]), routes)


@dataclass(frozen=True)
class Transition:
    state: State
    considered: str
    reason: str
    next_state: State

    def to_dict(self):
        return {"state": self.state.value, "considered": self.considered,
                "reason": self.reason, "next": self.next_state.value}


@dataclass(frozen=True)
class TriageDecision:
    asset_id: str
    verdict: State
    trace: tuple = field(default_factory=tuple)

    def to_dict(self):
        return {"asset_id": self.asset_id, "verdict": self.verdict.value,
                "trace": [t.to_dict() for t in self.trace]}

    @classmethod
    def from_dict(cls, d):
        trace = tuple(Transition(State(t["state"]), t["considered"], t["reason"],
                                 State(t["next"])) for t in d["trace"])
        return cls(d["asset_id"], State(d["verdict"]), trace)


def triage(assessment, policy=None, connectivity=None):
    policy = policy or TriagePolicy()
    connectivity = connectivity or ConnectivityInfo()
    if not connectivity.asset_accessible and not connectivity.route_assessments:
        raise InconsistentConnectivity(
            f"{assessment.asset_id}: asset is inaccessible but no access routes are given")

    lkn, dl = assessment.lkn, assessment.dl
    steps = []

    def go(state, considered, reason, nxt):
        steps.append(Transition(state, considered, reason, nxt))
        return nxt

    go(State.THREAT_IDENTIFIED, f"asset={assessment.asset_id}",
       "asset-level assessment from coherence change detection",
       State.ADEQUACY_CHECK)

    adequate = lkn >= policy.min_lkn_for_adequacy
    considered = f"lkn={lkn.label} min={policy.min_lkn_for_adequacy.label} dl={dl.label}"
    if adequate:
        go(State.ADEQUACY_CHECK, considered,
           "adequate: reliability meets policy", State.CONNECTIVITY_CHECK)
        if connectivity.asset_accessible:
            verdict = go(State.CONNECTIVITY_CHECK, "accessible=true",
                         "asset reachable: proceed with restoration design",
                         State.PROCEED_TO_RESTORATION)
        else:
            routes = ", ".join(f"{r}:{d.label}" for r, d in connectivity.route_assessments)
            verdict = go(State.CONNECTIVITY_CHECK, f"accessible=false routes=[{routes}]",
                         "asset not reachable: characterise damage of access routes",
                         State.ASSESS_CONNECTIVITY_FIRST)
    else:
        go(State.ADEQUACY_CHECK, considered,
           "not adequate: more information required", State.ESCALATION_CHECK)
        if dl is DLClass.NOT_ASSIGNED and lkn is LKnClass.LOW:
            verdict = go(State.ESCALATION_CHECK, f"lkn={lkn.label} dl={dl.label}",
                         "no graded damage evidence: seek testing or inspection data",
                         State.SEEK_BETTER_DATA)
        else:
            priority = ("component review required by policy"
                        if dl in policy.escalate_on_dl else "component review to confirm")
            sources = "; ".join(COMPONENT_IMAGERY_SOURCES)
            verdict = go(State.ESCALATION_CHECK, f"lkn={lkn.label} dl={dl.label}",
                         f"{priority}; sources: {sources}",
                         State.ESCALATE_TO_COMPONENT_LEVEL)
    return TriageDecision(assessment.asset_id, verdict, tuple(steps))


def replay(trace):
    """Walk a recorded trace and return its terminal state, checking continuity."""
    if not trace or trace[0].state is not State.THREAT_IDENTIFIED:
        raise ValueError("trace must start at ThreatIdentified")
    for prev, cur in zip(trace, trace[1:]):
        if prev.next_state is not cur.state:
            raise ValueError(f"trace jumps from {prev.next_state.value} to {cur.state.value}")
        if prev.next_state.terminal:
            raise ValueError("trace continues past a terminal state")
    last = trace[-1].next_state
    if not last.terminal:
        raise ValueError(f"trace ends in non-terminal state {last.value}")
    return last


def load_policy(path):
    with open(path, encoding="utf-8") as fh:
        try:
            return TriagePolicy.from_dict(json.load(fh))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"policy: {exc}") from None


def load_connectivity(path):
    """``{"B1": {"asset_accessible": false, "routes": [...]}, ...}``."""
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"connectivity: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError("connectivity: top level must be an object keyed by asset id")
    return {k: ConnectivityInfo.from_dict(v) for k, v in doc.items()}
