"""Instance files, generators, oracle sweeps, benchmarks and the CLI."""

from .generators import GenerationError, gen_instance, oracle_answer
from .instances import PROBLEMS, Instance, InstanceFormatError, dump, dumps, load, loads
from .runner import Answer, BenchRecord, cost_ratios, median_costs, run_bench, solve_instance, to_csv, verify

__all__ = [
    "PROBLEMS",
    "Answer",
    "BenchRecord",
    "GenerationError",
    "Instance",
    "InstanceFormatError",
    "cost_ratios",
    "dump",
    "dumps",
    "gen_instance",
    "load",
    "loads",
    "median_costs",
    "oracle_answer",
    "run_bench",
    "solve_instance",
    "to_csv",
    "verify",
]
