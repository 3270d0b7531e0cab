"""Command-line front end.

Exit codes: 0 success, 1 runtime/numerical failure, 2 usage or validation
failure.  All outputs are data files (CSV/JSON, UTF-8, LF line endings);
plotting is deliberately out of scope.
"""

from __future__ import annotations

import json
import sys

import click
import numpy as np

from . import homodyne
from .errors import CVSimError, SpecValidationError
from .fock import bs_output_from_angle, photon_number_distribution
from .gates import apply_gate, displacement_gate, squeeze_gate, thermal_prepare
from .network import parse_network_spec, run_network
from .phase_space import PhaseSpaceGrid, wigner_gaussian, write_wigner_csv
from .states import clean_tiny, vacuum_state


def _fail(message: str) -> "click.ClickException":
    exc = click.ClickException(message)
    exc.exit_code = 1
    return exc


_MODEL_CHOICES = ("fock", "spats", "squeezed", "cat", "thermal", "vacuum")


def _build_model(state, n, nbar, r, alpha_re, alpha_im, theta) -> homodyne.SourceModel:
    try:
        if state == "fock":
            if n is None:
                raise ValueError("--n is required for --state fock")
            return homodyne.Fock(n)
        if state == "spats":
            if nbar is None:
                raise ValueError("--nbar is required for --state spats")
            return homodyne.Spats(nbar)
        if state == "squeezed":
            if r is None:
                raise ValueError("--r is required for --state squeezed")
            return homodyne.SqueezedVacuum(r)
        if state == "cat":
            if alpha_re is None or alpha_im is None or theta is None:
                raise ValueError(
                    "--alpha-re, --alpha-im and --theta are required for --state cat"
                )
            return homodyne.CatState(complex(alpha_re, alpha_im), theta)
        if state == "thermal":
            if nbar is None:
                raise ValueError("--nbar is required for --state thermal")
            return homodyne.Thermal(nbar)
        return homodyne.Vacuum()
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None


def _model_options(required=True):
    def wrap(fn):
        fn = click.option("--theta", type=float, default=None, help="cat superposition phase")(fn)
        fn = click.option("--alpha-im", type=float, default=None, help="cat Im(alpha)")(fn)
        fn = click.option("--alpha-re", type=float, default=None, help="cat Re(alpha)")(fn)
        fn = click.option("--r", type=float, default=None, help="squeezing parameter")(fn)
        fn = click.option("--nbar", type=float, default=None, help="mean photon number")(fn)
        fn = click.option("--n", type=int, default=None, help="Fock photon number (0..10)")(fn)
        fn = click.option(
            "--state",
            type=click.Choice(_MODEL_CHOICES),
            required=required,
            default=None,
            help="source family",
        )(fn)
        return fn

    return wrap


@click.group()
def main() -> None:
    """Gaussian-optics simulation toolkit."""


@main.command("sample")
@_model_options()
@click.option("--count", type=int, required=True, help="number of records")
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--tol", type=float, default=homodyne.DEFAULT_TOL, show_default=True)
@click.option("--sort-targets", is_flag=True, help="sort CDF targets before inversion")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def cmd_sample(state, n, nbar, r, alpha_re, alpha_im, theta, count, seed, tol, sort_targets, out):
    """Generate homodyne records by inverse-CDF sampling and write phase,x CSV."""
    model = _build_model(state, n, nbar, r, alpha_re, alpha_im, theta)
    if count < 1:
        raise click.UsageError("--count must be >= 1")
    try:
        samples = homodyne.sample(model, count, seed=seed, tol=tol, sort_targets=sort_targets)
        homodyne.write_samples_csv(samples, out)
    except CVSimError as exc:
        raise _fail(str(exc)) from None
    click.echo(f"wrote {len(samples)} records to {out}")
    click.echo(f"mean {np.mean(samples.values):.6g}  variance {np.var(samples.values, ddof=1):.6g}")


@main.command("analyze")
@click.option("--in", "in_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--bins", type=int, default=50, show_default=True)
@click.option("--sigma-level", type=float, default=3.0, show_default=True)
@_model_options(required=False)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def cmd_analyze(in_path, bins, sigma_level, state, n, nbar, r, alpha_re, alpha_im, theta, out):
    """Bin a phase,x CSV, test the Heisenberg product and certify squeezing.

    Model flags are optional; without them the theory column is NaN."""
    model = None
    if state is not None:
        model = _build_model(state, n, nbar, r, alpha_re, alpha_im, theta)
    if bins < 4:
        raise click.UsageError("--bins must be >= 4")
    try:
        samples = homodyne.read_samples_csv(in_path, model=model)
        report = homodyne.binned_variance(samples, bins)
        homodyne.write_variance_csv(report, out)
    except CVSimError as exc:
        raise _fail(str(exc)) from None
    violations = homodyne.heisenberg_violations(report, sigma_level)
    certified = homodyne.squeezing_certificate(report, sigma_level)
    click.echo(f"heisenberg violations: {int(violations.sum())}")
    idx = np.flatnonzero(certified)
    if idx.size:
        centers = ", ".join(f"{report.bin_centers[i]:.4f}" for i in idx)
        click.echo(f"squeezing certified in {idx.size} bins at phi = {centers}")
    else:
        click.echo("squeezing certified in 0 bins")


@main.command("network")
@click.option("--config", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def cmd_network(config, out):
    """Run a JSON network description and write the final state + analyses."""
    with open(config, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise click.UsageError(f"config is not valid JSON: {exc}") from None
    try:
        spec = parse_network_spec(doc)
    except SpecValidationError as exc:
        raise click.UsageError(str(exc)) from None
    try:
        result = run_network(spec)
    except CVSimError as exc:
        raise _fail(str(exc)) from None
    payload = {
        "modes": spec.num_modes,
        "hbar": spec.hbar,
        "mean": clean_tiny(result.state.mean).tolist(),
        "cov": clean_tiny(result.state.cov).tolist(),
        "analyses": result.analyses,
    }
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    click.echo(f"wrote network result to {out}")


@main.command("fock-bs")
@click.option("--n1", type=int, required=True)
@click.option("--n2", type=int, required=True)
@click.option("--theta", type=float, default=np.pi / 4, show_default=True)
@click.option("--phi", type=float, default=np.pi, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def cmd_fock_bs(n1, n2, theta, phi, out):
    """Fock-basis beam-splitter output amplitudes and marginals."""
    if n1 < 0 or n2 < 0:
        raise click.UsageError("photon numbers must be non-negative")
    if n1 + n2 > 40:
        raise click.UsageError("n1 + n2 must not exceed 40")
    try:
        result = bs_output_from_angle(n1, n2, theta, phi)
    except (ValueError, CVSimError) as exc:
        raise _fail(str(exc)) from None
    amplitudes = [
        {"basis": [k, m], "re": amp.real, "im": amp.imag}
        for (k, m), amp in sorted(result.amplitudes.items())
    ]
    payload = {
        "total_photons": result.total_photons,
        "amplitudes": amplitudes,
        "marginal_mode0": photon_number_distribution(result, 0).tolist(),
        "marginal_mode1": photon_number_distribution(result, 1).tolist(),
    }
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    click.echo(f"wrote {len(amplitudes)} amplitudes to {out}")


@main.command("wigner")
@click.option(
    "--state",
    type=click.Choice(("vacuum", "coherent", "squeezed", "thermal")),
    required=True,
)
@click.option("--alpha-mag", type=float, default=0.0, show_default=True)
@click.option("--alpha-phase", type=float, default=0.0, show_default=True)
@click.option("--r", type=float, default=0.0, show_default=True)
@click.option("--theta", type=float, default=0.0, show_default=True)
@click.option("--nbar", type=float, default=0.0, show_default=True)
@click.option("--hbar", type=float, default=2.0, show_default=True)
@click.option("--xmin", type=float, default=-5.0, show_default=True)
@click.option("--xmax", type=float, default=5.0, show_default=True)
@click.option("--pmin", type=float, default=-5.0, show_default=True)
@click.option("--pmax", type=float, default=5.0, show_default=True)
@click.option("--nx", type=int, default=100, show_default=True)
@click.option("--np", "npts", type=int, default=100, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def cmd_wigner(state, alpha_mag, alpha_phase, r, theta, nbar, hbar,
               xmin, xmax, pmin, pmax, nx, npts, out):
    """Evaluate a single-mode Gaussian Wigner function on a grid, write x,p,w CSV."""
    try:
        grid = PhaseSpaceGrid(x_min=xmin, x_max=xmax, p_min=pmin, p_max=pmax, nx=nx, np=npts)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    if r < 0 or nbar < 0 or alpha_mag < 0:
        raise click.UsageError("state parameters must be non-negative")
    st = vacuum_state(1, hbar)
    try:
        if state == "coherent":
            st = apply_gate(displacement_gate(alpha_mag, alpha_phase, 0, 1, hbar), st)
        elif state == "squeezed":
            st = apply_gate(squeeze_gate(r, theta, 0, 1), st)
        elif state == "thermal":
            st = thermal_prepare(nbar, 0, st)
        fld = wigner_gaussian(st, grid, 0)
        write_wigner_csv(fld, out)
    except CVSimError as exc:
        raise _fail(str(exc)) from None
    click.echo(f"riemann normalization: {fld.riemann_sum():.6f}")
    click.echo(f"wrote {grid.nx * grid.np} grid points to {out}")


if __name__ == "__main__":
    sys.exit(main())
