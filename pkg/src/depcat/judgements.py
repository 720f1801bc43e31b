"""The six judgement forms, as plain data."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .syntax import Ctx, Tm, Ty


@dataclass(frozen=True)
class CtxJ:
    ctx: Ctx


@dataclass(frozen=True)
class TypeJ:
    ctx: Ctx
    ty: Ty


@dataclass(frozen=True)
class TermJ:
    ctx: Ctx
    tm: Tm
    ty: Ty


@dataclass(frozen=True)
class CtxEqJ:
    left: Ctx
    right: Ctx


@dataclass(frozen=True)
class TypeEqJ:
    ctx: Ctx
    left: Ty
    right: Ty


@dataclass(frozen=True)
class TermEqJ:
    ctx: Ctx
    left: Tm
    right: Tm
    ty: Ty


Judgement = Union[CtxJ, TypeJ, TermJ, CtxEqJ, TypeEqJ, TermEqJ]
