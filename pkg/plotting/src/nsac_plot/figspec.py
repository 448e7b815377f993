"""Figure specification: which snapshots, which labels, where to render."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .inputs import PlotInputError, read_key_values, time_from_filename


@dataclass(frozen=True)
class FigureSpec:
    snapshot_files: tuple[Path, ...]
    labels: tuple[str, ...]
    out_path: Path
    title: str = ""
    exact_overlay: Path | None = None
    time: float | None = None

    def __post_init__(self):
        if len(self.snapshot_files) == 0:
            raise PlotInputError("a figure needs at least one snapshot file")
        if len(self.labels) != len(self.snapshot_files):
            raise PlotInputError(
                f"{len(self.labels)} labels for {len(self.snapshot_files)} "
                "snapshot files"
            )

    def overlay_time(self) -> float:
        """Evaluation time of the exact overlay."""
        if self.time is not None:
            return self.time
        t = time_from_filename(self.snapshot_files[0])
        if t is None:
            raise PlotInputError(
                "overlay time not given and not parseable from the first "
                "snapshot filename; add a 'time = ...' line to the spec"
            )
        return t


def load_figure_spec(path) -> FigureSpec:
    """FigureSpec from a plain-text key-value file.

    Keys: snapshot_files (comma-separated paths), labels (comma-separated,
    one per file), out_path, and optionally title, exact_overlay, time.
    Relative paths are resolved against the spec file's directory.
    """
    path = Path(path)
    kv = read_key_values(path)
    missing = {"snapshot_files", "labels", "out_path"} - set(kv)
    if missing:
        raise PlotInputError(f"{path}: missing spec keys {sorted(missing)}")
    base = path.parent

    def resolve(p: str) -> Path:
        q = Path(p.strip())
        return q if q.is_absolute() else base / q

    files = tuple(resolve(p) for p in kv["snapshot_files"].split(",") if p.strip())
    labels = tuple(s.strip() for s in kv["labels"].split(",") if s.strip())
    overlay = resolve(kv["exact_overlay"]) if kv.get("exact_overlay") else None
    t = float(kv["time"]) if kv.get("time") else None
    return FigureSpec(snapshot_files=files, labels=labels,
                      out_path=resolve(kv["out_path"]),
                      title=kv.get("title", ""), exact_overlay=overlay, time=t)
