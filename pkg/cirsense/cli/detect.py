"""Commands for detecting occupancy in CIR record files."""

import logging
from pathlib import Path

import click

from cirsense.exceptions import InsufficientDataError
from cirsense.io import read_reports_csv, write_heatmap, write_reports_csv, write_summary
from cirsense.load.scenario import load_scenario
from cirsense.models.detection import DetectionSummary
from cirsense.models.filtering import FilterMode
from cirsense.pipeline import run_pipeline
from cirsense.processing.detection import evaluate as evaluate_reports
from cirsense.processing.geometry import grid_for_lots

from .util import INPUT_FILE, OUTPUT_FILE, ChoiceType

LOG = logging.getLogger(__name__)

scenario_option = click.option(
    "-s",
    "--scenario",
    required=True,
    help="Scenario TOML file or name of a bundled scenario",
)


def calibration_option(required: bool = True):
    return click.option(
        "-c",
        "--calibration",
        type=INPUT_FILE,
        required=required,
        help="CIR record file of the empty scene",
    )


def input_option(required: bool = True):
    return click.option(
        "-i",
        "--input",
        "input_file",
        type=INPUT_FILE,
        required=required,
        help="CIR record file to analyse",
    )


mode_option = click.option(
    "-m",
    "--mode",
    type=ChoiceType(FilterMode),
    default=str(FilterMode.FILTERED),
    show_default=True,
    help="Temporal filter mode",
)


def format_summary(summary: DetectionSummary) -> str:
    lines = [f"Scenario {summary.scenario or '-'}, truth {summary.truth}"]
    for mode, ratio in sorted(summary.ratios.items()):
        line = f"  {mode:<10} {ratio:6.1%} of {summary.epochs.get(mode, 0)} epochs"
        residual = summary.median_abs_residual(mode)
        if residual is not None:
            line += f", median |residual| {residual:.2f} m"
        lines.append(line)
    return "\n".join(lines)


@click.command()
@scenario_option
@calibration_option()
@input_option()
@mode_option
@click.option("-o", "--output", type=OUTPUT_FILE, required=True, help="Report CSV to write")
def detect(
    scenario: str, calibration: Path, input_file: Path, mode: FilterMode, output: Path
) -> None:
    """Assign every epoch of a measurement to a parking lot."""
    config = load_scenario(scenario)
    result = run_pipeline(config, calibration, input_file, mode)
    write_reports_csv(result.reports, output)
    if result.summary is not None:
        click.echo(format_summary(result.summary))
    click.secho(f"Wrote {len(result.reports)} reports to {output} ✔", fg="green")


@click.command()
@scenario_option
@calibration_option(required=False)
@input_option(required=False)
@click.option(
    "-r",
    "--reports",
    type=INPUT_FILE,
    multiple=True,
    help="Score existing report CSVs instead of running the pipeline",
)
@click.option("-t", "--truth", help="Occupied lot, defaults to the scenario's")
@click.option("--summary", type=OUTPUT_FILE, help="Write the summary as JSON")
def evaluate(
    scenario: str,
    calibration: Path | None,
    input_file: Path | None,
    reports: tuple[Path, ...],
    truth: str | None,
    summary: Path | None,
) -> None:
    """Compare the detection ratio of filtered and unfiltered processing."""
    config = load_scenario(scenario)
    truth = truth or config.truth
    if truth is None:
        raise click.UsageError("No truth lot given and the scenario defines none")
    if truth not in config.geometry.lots:
        raise click.BadParameter(
            f"Lot '{truth}' is not part of the scenario", param_hint="--truth"
        )

    if reports:
        collected = [report for path in reports for report in read_reports_csv(path)]
    else:
        if calibration is None or input_file is None:
            raise click.UsageError("Give --calibration and --input, or --reports")
        collected = []
        for mode in FilterMode:
            collected += run_pipeline(config, calibration, input_file, mode).reports

    result = evaluate_reports(collected, truth, config.reference_d_r, config.name)
    click.echo(format_summary(result))
    if summary is not None:
        write_summary(result, summary)
        click.secho(f"Wrote summary to {summary} ✔", fg="green")


@click.command()
@scenario_option
@calibration_option()
@input_option()
@mode_option
@click.option("-o", "--output", type=OUTPUT_FILE, required=True, help="ASCII grid to write")
@click.option(
    "--epoch",
    type=click.IntRange(min=0),
    help="Epoch to map, defaults to the last one",
)
@click.option(
    "--cell-size", type=click.FloatRange(min=0, min_open=True), help="Cell size in m"
)
@click.option(
    "--fill-radius", type=click.IntRange(min=0), help="Nearest neighbour fill radius in cells"
)
def heatmap(
    scenario: str,
    calibration: Path,
    input_file: Path,
    mode: FilterMode,
    output: Path,
    epoch: int | None,
    cell_size: float | None,
    fill_radius: int | None,
) -> None:
    """Map the residual of one epoch onto the site plan."""
    config = load_scenario(scenario)
    constants = config.constants
    grid_spec = grid_for_lots(
        config.geometry,
        constants.cell_size if cell_size is None else cell_size,
        fill_radius=constants.fill_radius if fill_radius is None else fill_radius,
    )
    result = run_pipeline(
        config, calibration, input_file, mode, -1 if epoch is None else epoch, grid_spec
    )
    if result.heatmap is None:
        raise InsufficientDataError(f"No {mode} output to build a heatmap from")
    write_heatmap(result.heatmap, output)
    click.secho(
        f"Wrote {result.heatmap.width}x{result.heatmap.height} heatmap to {output} ✔",
        fg="green",
    )
