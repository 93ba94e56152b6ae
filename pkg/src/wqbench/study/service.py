"""HTTP service hosting the annotation campaign.

Annotators authenticate with their token (query parameter), fetch blinded
batches, and submit position rankings. The payloads sent to the client
never contain arm identities, scores, or generator names.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Query
from fastapi.staticfiles import StaticFiles

from wqbench.bestofn import TripletRecord, load_triplets_file
from wqbench.study.assign import AssignmentPlan
from wqbench.study.store import DuplicateSubmissionError, RecordStore
from wqbench.study.types import AnnotationRecord


@dataclass
class StudyConfig:
    plan_path: str
    triplets_path: str
    records_path: str
    host: str = "127.0.0.1"
    port: int = 8900
    static_dir: Optional[str] = None


def create_app(
    plan: AssignmentPlan,
    triplets: dict[str, TripletRecord],
    store: RecordStore,
    static_dir: Optional[str] = None,
) -> FastAPI:
    app = FastAPI(title="wqbench annotation study")
    known_annotators = set(plan.annotators())

    def require_annotator(annotator: str) -> str:
        if annotator not in known_annotators:
            raise HTTPException(status_code=401, detail="unknown annotator token")
        return annotator

    def annotator_progress(annotator: str) -> dict:
        batches = plan.for_annotator(annotator)
        total = sum(len(b.items) for b in batches)
        completed = sum(
            1
            for b in batches
            for item in b.items
            if store.has(annotator, item.triplet_id)
        )
        return {"completed": completed, "total": total}

    @app.get("/api/batch")
    def get_batch(annotator: str = Query(...)):
        require_annotator(annotator)
        progress = annotator_progress(annotator)
        for batch in plan.for_annotator(annotator):
            pending = [
                item
                for item in batch.items
                if not store.has(annotator, item.triplet_id)
            ]
            if not pending:
                continue
            items = []
            for item in pending:
                triplet = triplets[item.triplet_id]
                arm_texts = {
                    "first_draft": triplet.first_draft.text,
                    "random_edit": triplet.random_edit.text,
                    "best_edit": triplet.best_edit.text,
                }
                items.append(
                    {
                        "triplet_id": item.triplet_id,
                        "instruction": triplet.instruction,
                        "responses": [arm_texts[arm] for arm in item.presented_order],
                    }
                )
            return {"batch_id": batch.batch_id, "items": items, "progress": progress}
        return {"batch_id": None, "items": [], "progress": progress}

    @app.post("/api/ranking")
    def post_ranking(payload: dict, annotator: str = Query(...)):
        require_annotator(annotator)
        triplet_id = payload.get("triplet_id")
        ranks = payload.get("ranks")
        if not isinstance(triplet_id, str):
            raise HTTPException(status_code=400, detail="triplet_id required")
        item = plan.item_for(annotator, triplet_id)
        if item is None:
            raise HTTPException(
                status_code=404, detail="triplet not assigned to this annotator"
            )
        if (
            not isinstance(ranks, list)
            or len(ranks) != 3
            or sorted(ranks) != [1, 2, 3]
        ):
            raise HTTPException(
                status_code=400,
                detail="ranks must be a strict permutation of [1, 2, 3]",
            )
        record = AnnotationRecord.from_positions(
            triplet_id=triplet_id,
            annotator_id=annotator,
            presented_order=item.presented_order,
            position_ranks=[int(r) for r in ranks],
            timestamp=datetime.now(timezone.utc).isoformat(),
        )
        try:
            store.append(record)
        except DuplicateSubmissionError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        return {"status": "ok", "progress": annotator_progress(annotator)}

    @app.get("/api/progress")
    def get_progress():
        per_annotator = {a: annotator_progress(a) for a in plan.annotators()}
        return {
            "total": plan.n_assignments,
            "completed": sum(p["completed"] for p in per_annotator.values()),
            "per_annotator": per_annotator,
        }

    @app.get("/api/records")
    def get_records():
        return {"records": [r.to_dict() for r in store.records()]}

    if static_dir:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    return app


def load_app(config: StudyConfig) -> FastAPI:
    plan = AssignmentPlan.from_file(config.plan_path)
    triplets = {t.id: t for t in load_triplets_file(config.triplets_path)}
    missing = {
        item.triplet_id
        for batch in plan.batches
        for item in batch.items
        if item.triplet_id not in triplets
    }
    if missing:
        raise ValueError(f"plan references unknown triplets: {sorted(missing)[:5]}")
    store = RecordStore(config.records_path)
    return create_app(plan, triplets, store, static_dir=config.static_dir)


def serve_study(config: StudyConfig) -> None:
    """Run the annotation service until interrupted."""
    import uvicorn

    uvicorn.run(load_app(config), host=config.host, port=config.port, log_level="warning")
