"""HTTP face of the command layer.

POST /v1/<command> with a RunRequest body runs one command and returns
the report; GET /v1/health is a liveness probe.  Domain errors (bad
workspace, missing flags, unknown names) map to 400, unknown commands
to 404.
"""

from fastapi import FastAPI, HTTPException

from .commands import HANDLERS, UsageError, execute
from .models import Report, RunRequest
from .quiverrep import CheckError

app = FastAPI(title="quiverheart", version="0.1.0")


@app.get("/v1/health")
def health():
    return {"status": "ok", "schema_version": "1",
            "commands": sorted(HANDLERS)}


@app.post("/v1/{command}", response_model=Report)
def run_command(command: str, req: RunRequest):
    if command not in HANDLERS:
        raise HTTPException(status_code=404,
                            detail="unknown command %r" % command)
    try:
        return execute(command, req)
    except UsageError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    except CheckError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
