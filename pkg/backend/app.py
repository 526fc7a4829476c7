"""
FS(j,k) Perfect Matching Toolkit - FastAPI Application
"""
import logging
from typing import List, Optional

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import StreamingResponse
from pydantic import BaseModel

from config import CORS_ORIGINS, FS_DEFAULT_KMAX, LOG_FORMAT
from services.coloring import find_3_edge_coloring
from services.errors import FSError
from services.export_service import export_to_csv, export_to_excel
from services.formulas import CSV_COLUMNS, mu_closed, verify_all
from services.fs_family import build, verify_construction
from services.jaeger import berge_fulkerson_check, double_cover_candidates, enumerate_jaeger_matchings
from services.matchings import count_by_type
from services.words import hamiltonian_type2_count, hamiltonian_words
from utils.classification import classify_family
from utils.recall import compare_counts

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format=LOG_FORMAT
)
logger = logging.getLogger(__name__)

# Initialize FastAPI app
app = FastAPI(
    title="FS(j,k) Perfect Matching Toolkit",
    description="Construct FS(j,k), count and classify its perfect matchings, check closed forms",
    version="1.0.0"
)

# CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=CORS_ORIGINS,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


# Request/Response models
class VerifyRequest(BaseModel):
    kmax: int = FS_DEFAULT_KMAX
    structural: bool = False


class ExportRequest(BaseModel):
    rows: Optional[List[dict]] = None
    kmax: Optional[int] = None
    columns: Optional[List[str]] = None
    column_names: Optional[dict] = None


def _family(j: int, k: int):
    try:
        return build(j, k)
    except FSError as e:
        raise HTTPException(status_code=400, detail=str(e))


@app.get("/api")
async def api_root():
    """API info endpoint"""
    return {"message": "FS(j,k) Perfect Matching Toolkit API", "version": "1.0.0"}


@app.get("/api/graph")
def get_graph(j: int = Query(...), k: int = Query(...)):
    """JSON export of FS(j,k) with its construction checks"""
    fs = _family(j, k)
    report = verify_construction(fs)
    return {
        "j": j,
        "k": k,
        "graph": fs.graph.to_json_dict(),
        "checks": [c.model_dump() for c in report.checks],
    }


@app.get("/api/count")
def get_count(j: int = Query(...), k: int = Query(...)):
    """Enumerated perfect matching counts by type, next to the closed form"""
    fs = _family(j, k)
    try:
        counts = count_by_type(fs)
    except FSError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return {**counts.model_dump(), "closed_form": mu_closed(j, k), "profile": classify_family(j, k)}


@app.get("/api/chromatic")
def get_chromatic(j: int = Query(...), k: int = Query(...)):
    """Chromatic index and, when 3, one colouring"""
    fs = _family(j, k)
    coloring = find_3_edge_coloring(fs)
    if coloring is None:
        return {"j": j, "k": k, "chromatic_index": 4, "classes": None}
    return {"j": j, "k": k, "chromatic_index": 3, "classes": coloring.classes()}


@app.get("/api/jaeger")
def get_jaeger(j: int = Query(...), k: int = Query(...)):
    """Jaeger matchings with their blue/red split"""
    fs = _family(j, k)
    try:
        found = enumerate_jaeger_matchings(fs)
    except FSError as e:
        raise HTTPException(status_code=400, detail=str(e))
    cover = double_cover_candidates([m for m, _ in found])
    bf = berge_fulkerson_check(cover) if cover is not None else None
    return {
        "j": j,
        "k": k,
        "count": len(found),
        "matchings": [
            {"matching": list(m.serials), "blue": split.blue, "red": split.red}
            for m, split in found
        ],
        "berge_fulkerson": bf,
    }


@app.get("/api/words")
def get_words(j: int = Query(...), k: int = Query(...)):
    """Hamiltonian type-2 matchings as block words"""
    fs = _family(j, k)
    try:
        words = hamiltonian_words(fs)
        count = hamiltonian_type2_count(fs)
    except FSError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return {
        "j": j,
        "k": k,
        "count": count,
        "words": [f"{w}@{subtype.value}" for subtype, ws in words.items() for w in ws],
    }


@app.post("/api/verify")
def verify(request: VerifyRequest):
    """Compare closed forms against enumeration up to kmax"""
    logger.info(f"Verify request - kmax: {request.kmax}, structural: {request.structural}")
    try:
        report = verify_all(request.kmax, structural=request.structural)
    except FSError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Verify error: {e}")
        raise HTTPException(status_code=500, detail=str(e))

    rows = report.to_rows()
    return {"passed": report.passed, "summary": compare_counts(rows), "rows": rows}


def _export_rows(request: ExportRequest) -> List[dict]:
    if request.rows:
        return request.rows
    if request.kmax is not None:
        try:
            return verify_all(request.kmax).to_rows()
        except FSError as e:
            raise HTTPException(status_code=400, detail=str(e))
    raise HTTPException(status_code=400, detail="Provide rows or kmax to export")


@app.post("/api/export/csv")
def export_csv(request: ExportRequest):
    """Export count rows to CSV"""
    rows = _export_rows(request)
    csv_data = export_to_csv(
        rows,
        columns=request.columns or CSV_COLUMNS,
        column_names=request.column_names,
        bom=True,  # browser downloads open in Excel
    )

    return StreamingResponse(
        csv_data,
        media_type="text/csv",
        headers={
            "Content-Disposition": "attachment; filename=fs_counts.csv"
        }
    )


@app.post("/api/export/excel")
def export_excel(request: ExportRequest):
    """Export count rows to Excel"""
    rows = _export_rows(request)
    excel_data = export_to_excel(
        rows,
        columns=request.columns or CSV_COLUMNS,
        column_names=request.column_names
    )

    return StreamingResponse(
        excel_data,
        media_type="application/vnd.openxmlformats-officedocument.spreadsheetml.sheet",
        headers={
            "Content-Disposition": "attachment; filename=fs_counts.xlsx"
        }
    )


@app.get("/health")
async def health_check():
    """Health check endpoint"""
    return {"status": "healthy"}


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
