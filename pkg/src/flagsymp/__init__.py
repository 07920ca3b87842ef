"""Invariant (1,2)-symplectic metrics on full flag manifolds via tournaments."""

from .tournament import CodeParseError, Tournament, TournamentError, TripleClass, build_tournament

__all__ = ["CodeParseError", "Tournament", "TournamentError", "TripleClass", "build_tournament"]
