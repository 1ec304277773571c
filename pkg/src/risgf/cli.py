"""Command-line experiment runner: ``risgf {sweep,phase-table,validate}``."""

import argparse
import csv
import dataclasses
import datetime
import io
import json
import logging
import sys
import time

from . import __version__, config, validation
from .allocation import CapacityError
from .complexmat import DimensionError
from .outage import ConfigError, outage_tally
from .phasesearch import SearchTooLarge, evaluate_configs

log = logging.getLogger("risgf")

EXIT_OK, EXIT_VALIDATION, EXIT_CONFIG, EXIT_CAPACITY = 0, 1, 2, 3

CSV_COLUMNS = (
    "snr_db", "scheme", "receiver", "ris_elements", "phase_bits", "phase_indices",
    "sensor_id", "trials", "outage", "std_err", "rate",
)


def _row(cfg, snr, phase, estimate):
    return (
        repr(float(snr)),
        cfg.scheme.value,
        cfg.receiver.value,
        cfg.dims.ris_elements,
        phase.bits if phase is not None else 0,
        "-".join(str(m) for m in phase.indices) if phase is not None else "",
        estimate.sensor_id,
        estimate.trials,
        repr(estimate.p_hat),
        repr(estimate.std_err),
        repr(float(cfg.rate)),
    )


def sweep_rows(experiment, workers=1):
    for cfg in experiment.variants:
        for i, snr in enumerate(cfg.snr_db):
            log.info("sweep %s/%s K=%d snr=%g dB", cfg.scheme.value, cfg.receiver.value, cfg.dims.ris_elements, snr)
            for est in outage_tally(cfg, snr, i, workers).estimates():
                yield _row(cfg, snr, cfg.phase, est)


def phase_table_rows(experiment, workers=1):
    if len(experiment.variants) != 1:
        raise ConfigError("phase-table needs exactly one scheme, receiver and ris_elements value")
    base = experiment.variants[0]
    if len(base.snr_db) != 1:
        raise ConfigError("phase-table needs exactly one snr_db value")
    if base.dims.ris_elements < 1:
        raise ConfigError("phase-table needs ris_elements >= 1")
    snr = base.snr_db[0]
    bits = int(experiment.raw.get("phase_bits", 1))
    log.info("phase table K=%d b=%d snr=%g dB, %d trials", base.dims.ris_elements, bits, snr, base.trials)
    for row in evaluate_configs(base, snr, bits=bits, workers=workers):
        yield _row(base, snr, row.phase, row.worst_sensor_outage)


def _write_csv(rows, out, timestamp):
    buf = io.StringIO()
    if timestamp:
        buf.write(f"# generated {datetime.datetime.now(datetime.timezone.utc).isoformat()}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    count = 0
    for row in rows:
        writer.writerow(row)
        count += 1
    if out is None:
        sys.stdout.write(buf.getvalue())
    else:
        with open(out, "w", newline="") as fh:
            fh.write(buf.getvalue())
    return count


def _manifest(args, experiment, elapsed):
    def encode(obj):
        if dataclasses.is_dataclass(obj):
            return {f.name: getattr(obj, f.name) for f in dataclasses.fields(obj) if f.init}
        if hasattr(obj, "value"):
            return obj.value
        return str(obj)

    return {
        "config": args.config,
        "command": args.command,
        "version": __version__,
        "seed": experiment.seed,
        "workers": args.workers,
        "common_random_numbers": not args.independent_streams,
        "duration_s": round(elapsed, 3),
        "experiments": json.loads(json.dumps(list(experiment.variants), default=encode)),
    }


def build_parser():
    parser = argparse.ArgumentParser(prog="risgf", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("sweep", "outage versus SNR for every configured variant"),
        ("phase-table", "rank all RIS phase configurations at one SNR"),
        ("validate", "run analytic-oracle and identity self-checks"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=name != "validate", help="experiment file (YAML or JSON)")
        p.add_argument("--out", help="CSV output path (default: stdout)")
        p.add_argument("--seed", type=int, help="override the seed in the experiment file")
        p.add_argument("--workers", type=int, default=1, help="worker processes; results do not depend on it")
        p.add_argument("--independent-streams", action="store_true", help="disable common random numbers")
        p.add_argument("--timestamp", action="store_true", help="prefix the CSV with a generation-time comment")
        p.add_argument("-q", "--quiet", action="store_true", help="no progress on stderr")
        if name == "validate":
            p.add_argument("--trials", type=int, default=200_000, help="trials per SNR for the SISO oracle")
    return parser


def _validate(args):
    seed = args.seed if args.seed is not None else 0
    ok = True
    for check in validation.run_all(trials=args.trials, seed=seed, workers=args.workers):
        print(check.line())
        ok &= check.passed
    return EXIT_OK if ok else EXIT_VALIDATION


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(asctime)s %(levelname)s %(message)s",
        stream=sys.stderr,
    )
    if args.command == "validate":
        return _validate(args)

    start = time.perf_counter()
    try:
        experiment = config.load(args.config, seed=args.seed, independent_streams=args.independent_streams)
        if args.command == "sweep":
            if experiment.phase_mode == "enumerate":
                raise ConfigError("phase_mode enumerate is only valid for phase-table")
            rows = list(sweep_rows(experiment, args.workers))
        else:
            rows = list(phase_table_rows(experiment, args.workers))
    except (ConfigError, SearchTooLarge, OSError) as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    except (CapacityError, DimensionError) as exc:
        log.error("%s", exc)
        return EXIT_CAPACITY

    count = _write_csv(rows, args.out, args.timestamp)
    elapsed = time.perf_counter() - start
    if args.out is not None:
        manifest_path = args.out + ".manifest.json"
        with open(manifest_path, "w") as fh:
            json.dump(_manifest(args, experiment, elapsed), fh, indent=2)
        print(f"{args.out}\t{count} rows\t{elapsed:.1f}s")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
