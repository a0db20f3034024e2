"""FastAPI service wrapping the decomposition engine.

One endpoint runs any CLI command on a problem file shipped in the request
body; the response is the same versioned report the CLI consumes. Errors the
engine classifies (input / capability / bound) come back as HTTP 200 with
``ok: false`` and the exit code, so thin clients can surface them verbatim;
only malformed requests produce 4xx.
"""

from fastapi import FastAPI
from pydantic import BaseModel, Field

from . import __version__
from .api import COMMANDS, run_command

app = FastAPI(
    title="binomeso",
    version=__version__,
    description="Cellular, mesoprimary and binomial primary decomposition "
    "of binomial ideals over exact fields.",
)


class CommandRequest(BaseModel):
    command: str = Field(description=f"one of: {', '.join(COMMANDS)}")
    problem: str = Field(description="problem file text (ring/grading/ideal)")
    bound: int | None = Field(default=None, description="witness search degree bound")
    sigma: list[str] | None = Field(default=None, description="variable names")
    nu: list[str] | None = Field(default=None, description="rational coordinates")
    region: int | None = Field(default=None, description="diagram region bound")
    field: str | None = Field(default=None, description="field override, e.g. QQ(zeta_3)")
    from_components: str | None = Field(
        default=None, description="component file text for toral-part"
    )


class CommandResponse(BaseModel):
    schema_version: int = Field(alias="schema")
    command: str
    ok: bool
    exit_code: int
    input: dict | None = None
    result: dict | None = None
    error: dict | None = None
    timing_ms: int

    model_config = {"populate_by_name": True}


@app.get("/v1/health")
def health():
    return {"status": "ok", "version": __version__}


@app.get("/v1/commands")
def commands():
    return {"commands": list(COMMANDS)}


@app.post("/v1/run", response_model=CommandResponse, response_model_by_alias=True)
def run(req: CommandRequest):
    options = {
        "bound": req.bound,
        "sigma": req.sigma,
        "nu": req.nu,
        "region": req.region,
        "field": req.field,
        "from_components": req.from_components,
    }
    report, _ = run_command(req.command, req.problem, options)
    return report
