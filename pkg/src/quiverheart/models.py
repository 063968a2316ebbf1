"""Request and report schemas for the command service."""

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class RunRequest(BaseModel):
    """Flags shared by every command; unused fields are ignored by
    handlers that do not need them."""
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    workspace: str
    pair: Optional[str] = None
    from_pair: Optional[str] = Field(None, alias="from")
    to_pair: Optional[str] = Field(None, alias="to")
    objects: list[str] = []
    random: int = Field(0, ge=0)
    seed: int = Field(0, ge=0)
    oracle_cap: Optional[int] = Field(None, ge=1)
    depth: int = Field(1, ge=1)
    max_extra: int = Field(2, ge=0)


class CheckRecord(BaseModel):
    name: str
    status: Literal["pass", "fail", "inconclusive"]
    witnesses: dict = {}


class Report(BaseModel):
    schema_version: Literal["1"] = "1"
    command: str
    workspace: str
    seed: int
    checks: list[CheckRecord]
    ok: bool
