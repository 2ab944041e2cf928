"""Read and write CIR record files, occupancy reports and heatmaps."""

import csv
import logging
import math
import re
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np
from pydantic import ValidationError

from cirsense.config import settings
from cirsense.constants import AMBIGUOUS_PREFIX, CIR_FILE_MAGIC, REPORT_COLUMNS
from cirsense.exceptions import CirFileError, RejectedInputError, SchemaError
from cirsense.models.cir import Cir
from cirsense.models.detection import DetectionSummary, OccupancyReport, ReflectionEstimate
from cirsense.models.geometry import HeatGrid

LOG = logging.getLogger(__name__)

HEADER_PATTERN = re.compile(
    rf"^#\s*{re.escape(CIR_FILE_MAGIC)}\s+k=(?P<k>\d+)\s+dt_ns=(?P<dt>\S+)\s*$"
)
HEATMAP_KEYS = ("origin_x", "origin_y", "cell_size", "width", "height")


def format_cir_header(k_taps: int, delta_t: float) -> str:
    return f"# {CIR_FILE_MAGIC} k={k_taps} dt_ns={delta_t * 1e9!r}"


def parse_cir_header(line: str, path: Path | None = None) -> tuple[int, float]:
    """Return tap count and tap duration (s) from a record file header."""
    match = HEADER_PATTERN.match(line.strip())
    if match is None:
        raise CirFileError(f"Expected a '# {CIR_FILE_MAGIC}' header", 1, path)
    try:
        delta_t = float(match.group("dt")) * 1e-9
    except ValueError as err:
        raise CirFileError(f"Invalid tap duration '{match.group('dt')}'", 1, path) from err
    if not math.isfinite(delta_t) or delta_t <= 0:
        raise CirFileError(f"Invalid tap duration '{match.group('dt')}'", 1, path)
    return int(match.group("k")), delta_t


def read_cir_header(path: Path) -> tuple[int, float]:
    with open(path, encoding="utf-8") as cir_fh:
        return parse_cir_header(cir_fh.readline(), path)


def write_cir_file(
    stream: Sequence[Cir],
    path: Path,
    k_taps: int | None = None,
    delta_t: float | None = None,
    precision: int | None = None,
) -> None:
    """Write one line per epoch: epoch,tx_id,rx_id,i_0,q_0,...

    Header constants are taken from the stream, or the settings for an
    empty stream.
    """
    precision = settings.file_precision if precision is None else precision
    if stream:
        k_taps = stream[0].k_taps if k_taps is None else k_taps
        delta_t = stream[0].delta_t if delta_t is None else delta_t
    k_taps = settings.k_taps if k_taps is None else k_taps
    delta_t = settings.delta_t if delta_t is None else delta_t

    with open(path, "w", encoding="utf-8", newline="") as cir_fh:
        cir_fh.write(format_cir_header(k_taps, delta_t) + "\n")
        writer = csv.writer(cir_fh, lineterminator="\n")
        for cir in stream:
            if cir.k_taps != k_taps or cir.delta_t != delta_t:
                raise SchemaError(
                    f"Epoch {cir.epoch} has {cir.k_taps} taps of {cir.delta_t} s, "
                    f"file holds {k_taps} taps of {delta_t} s"
                )
            interleaved = np.column_stack([cir.taps.real, cir.taps.imag]).ravel()
            writer.writerow(
                [cir.epoch, cir.tx_id, cir.rx_id]
                + [f"{value:.{precision}g}" for value in interleaved]
            )
    LOG.info("Wrote %d epochs to %s", len(stream), path)


def iter_cir_file(path: Path, k_taps: int | None = None) -> Iterator[Cir]:
    """Stream the epochs of a record file, one line at a time."""
    with open(path, encoding="utf-8", newline="") as cir_fh:
        file_k_taps, delta_t = parse_cir_header(cir_fh.readline(), path)
        if k_taps is not None and file_k_taps != k_taps:
            raise SchemaError(f"{path} holds {file_k_taps} taps per epoch, expected {k_taps}")
        n_fields = 3 + 2 * file_k_taps
        for line_number, row in enumerate(csv.reader(cir_fh), start=2):
            if not row or (len(row) == 1 and row[0].strip() == ""):
                continue
            if len(row) != n_fields:
                raise SchemaError(
                    f"{path} line {line_number} has {len(row)} fields, expected {n_fields}"
                )
            try:
                epoch = int(row[0])
                values = np.array([float(field) for field in row[3:]], dtype=np.float64)
            except ValueError as err:
                LOG.error("Unreadable record on line %d in %s", line_number, path)
                raise CirFileError(f"Malformed record: {err}", line_number, path) from err
            if not np.all(np.isfinite(values)):
                raise RejectedInputError(
                    f"{path} line {line_number} contains non-finite taps"
                )
            try:
                yield Cir(
                    taps=values[0::2] + 1j * values[1::2],
                    delta_t=delta_t,
                    epoch=epoch,
                    tx_id=row[1].strip(),
                    rx_id=row[2].strip(),
                )
            except ValidationError as err:
                raise CirFileError(f"Invalid record: {err}", line_number, path) from err


def read_cir_file(path: Path, k_taps: int | None = None) -> list[Cir]:
    stream = list(iter_cir_file(path, k_taps))
    LOG.info("Read %d epochs from %s", len(stream), path)
    return stream


def format_lot(report: OccupancyReport) -> str:
    if report.lot is not None:
        return report.lot
    if report.ambiguous:
        return AMBIGUOUS_PREFIX + "|".join(report.candidates)
    return ""


def write_reports_csv(reports: Iterable[OccupancyReport], path: Path) -> None:
    """Write reports as epoch,mode,lot,d_r_est,amplitude."""
    with open(path, "w", encoding="utf-8", newline="") as report_fh:
        writer = csv.writer(report_fh, lineterminator="\n")
        writer.writerow(REPORT_COLUMNS)
        for report in reports:
            estimate = report.estimate
            writer.writerow(
                [
                    report.epoch,
                    report.mode,
                    format_lot(report),
                    "" if estimate is None else f"{estimate.d_r_est:.6f}",
                    "" if estimate is None else f"{estimate.amplitude:.6f}",
                ]
            )


def read_reports_csv(path: Path) -> list[OccupancyReport]:
    reports = []
    with open(path, encoding="utf-8", newline="") as report_fh:
        reader = csv.DictReader(report_fh)
        if tuple(reader.fieldnames or ()) != REPORT_COLUMNS:
            raise SchemaError(f"{path} does not have the columns {','.join(REPORT_COLUMNS)}")
        for row in reader:
            lot_field = row["lot"] or ""
            lot, candidates = None, []
            if lot_field.startswith(AMBIGUOUS_PREFIX):
                candidates = lot_field.removeprefix(AMBIGUOUS_PREFIX).split("|")
            elif lot_field:
                lot, candidates = lot_field, [lot_field]
            try:
                estimate = None
                if row["d_r_est"]:
                    estimate = ReflectionEstimate(
                        d_r_est=float(row["d_r_est"]), amplitude=float(row["amplitude"])
                    )
                reports.append(
                    OccupancyReport(
                        epoch=int(row["epoch"]),
                        mode=row["mode"],
                        lot=lot,
                        candidates=candidates,
                        estimate=estimate,
                    )
                )
            except (ValueError, ValidationError) as err:
                LOG.error("Invalid report on line %d in %s", reader.line_num, path)
                raise CirFileError(f"Invalid report: {err}", reader.line_num, path) from err
    return reports


def write_summary(summary: DetectionSummary, path: Path) -> None:
    with open(path, "w", encoding="utf-8") as summary_fh:
        summary_fh.write(summary.model_dump_json(indent=2))


def write_heatmap(grid: HeatGrid, path: Path, precision: int = 6) -> None:
    """ASCII grid, row j holds the cells at y = origin_y + j * cell_size."""
    header = (
        f"origin_x={grid.origin[0]!r} origin_y={grid.origin[1]!r} "
        f"cell_size={grid.cell_size!r} width={grid.width} height={grid.height}"
    )
    np.savetxt(path, grid.cells, fmt=f"%.{precision}g", header=header, comments="# ")


def read_heatmap(path: Path) -> HeatGrid:
    with open(path, encoding="utf-8") as heat_fh:
        header = heat_fh.readline().lstrip("#").split()
        fields = dict(item.split("=", 1) for item in header if "=" in item)
        missing = [key for key in HEATMAP_KEYS if key not in fields]
        if missing:
            raise CirFileError(f"Heatmap header lacks {', '.join(missing)}", 1, path)
        try:
            cells = np.loadtxt(heat_fh, ndmin=2)
            width, height = int(fields["width"]), int(fields["height"])
            origin = (float(fields["origin_x"]), float(fields["origin_y"]))
            cell_size = float(fields["cell_size"])
        except ValueError as err:
            raise CirFileError(f"Malformed heatmap: {err}", 1, path) from err
    if cells.shape != (height, width):
        raise SchemaError(f"Heatmap is {cells.shape}, header says {(height, width)}")
    return HeatGrid(origin=origin, cell_size=cell_size, cells=cells)
