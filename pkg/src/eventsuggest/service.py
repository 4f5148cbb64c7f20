"""Read-only HTTP service over a built index."""

from __future__ import annotations

import logging
from pathlib import Path

from fastapi import FastAPI, HTTPException, Query
from fastapi.staticfiles import StaticFiles

from .index import EmptyQuery, IndexStore
from .suggest import InvalidMix, SuggestionRequest, suggest

logger = logging.getLogger("eventsuggest.service")


class IndexMissing(FileNotFoundError):
    pass


def create_app(index_dir: str | Path, ui_dir: str | Path | None = None) -> FastAPI:
    index_dir = Path(index_dir)
    if not (index_dir / "manifest.json").is_file():
        raise IndexMissing(f"no index manifest under {index_dir}")
    store = IndexStore(index_dir)

    app = FastAPI(title="eventsuggest")

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok", "documents": len(store)}

    @app.get("/suggest")
    def get_suggest(
        q: str = Query(default=""),
        n: int = Query(default=8, ge=1),
        k: int = Query(default=2, ge=0),
        as_of: int | None = Query(default=None),
    ) -> dict:
        if not q.strip():
            raise HTTPException(status_code=400, detail="EmptyQuery")
        try:
            req = SuggestionRequest(q=q, n=n, k=k, as_of=as_of)
            result = suggest(req, store)
        except InvalidMix as exc:
            raise HTTPException(status_code=400, detail=f"InvalidMix: {exc}")
        except EmptyQuery:
            raise HTTPException(status_code=400, detail="EmptyQuery")
        logger.info("suggest q=%r n=%d k=%d -> %d items", q, n, k,
                    len(result.items))
        return {
            "query": q, "n": n, "k": k,
            "items": [
                {
                    "text": s.text,
                    "source": s.source,
                    "cluster_id": s.cluster_id,
                    "rank": s.rank,
                    "cluster_date_or_range": s.cluster_date_or_range,
                }
                for s in result.items
            ],
        }

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


def serve(index_dir: str | Path, host: str = "127.0.0.1", port: int = 8000,
          ui_dir: str | Path | None = None) -> None:
    import uvicorn

    app = create_app(index_dir, ui_dir)
    uvicorn.run(app, host=host, port=port)
