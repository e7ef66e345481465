"""Request and response envelopes shared by the CLI and the HTTP service."""

from __future__ import annotations

from typing import Any, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, StrictFloat, StrictInt, StrictStr

Command = Literal["check", "reduce", "realize", "plan", "cover", "path"]
UnitName = Literal["pi", "two_pi"]
Entry = Union[StrictInt, StrictFloat, StrictStr]


class Options(BaseModel):
    model_config = ConfigDict(extra="forbid")

    tolerance: float = Field(default=1e-9, gt=0, lt=1)
    seed: int = 0
    unit: Optional[UnitName] = None
    stop_at: Literal[3, 4] = 4
    cube: Optional[List[Entry]] = None
    samples: int = Field(default=64, ge=1, le=4096)


class Request(BaseModel):
    """One command.  ``theta_b`` is the second endpoint for ``path``."""

    model_config = ConfigDict(extra="forbid")

    command: Command
    theta: List[Entry] = Field(min_length=1)
    theta_b: Optional[List[Entry]] = None
    options: Options = Field(default_factory=Options)


class ErrorInfo(BaseModel):
    code: str
    kind: Literal["domain", "usage", "internal"]
    message: str


class Response(BaseModel):
    command: Optional[str] = None
    input: Optional[dict] = None
    options: dict = Field(default_factory=dict)
    result: Optional[Any] = None
    error: Optional[ErrorInfo] = None
