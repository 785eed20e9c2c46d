"""Figure specifications: one per experiment id, or a tabular-only
marker for the table experiments.

A spec maps CSV schema-v1 columns onto axes.  Panels let one figure
carry the scan pairs that belong together (phase/amplitude, curve/heat
map).  Solid lines carry the not-all-zero probability and dashed lines
the odd-parity probability wherever both appear, so the mixed-state
figures keep the same visual split as their sources.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Curve:
    column: str
    style: str = "solid"        # solid | dashed | dotted
    marker: str | None = None
    label: str | None = None


@dataclass(frozen=True)
class Panel:
    kind: str                   # line | scatter | heatmap
    x: str
    curves: tuple[Curve, ...] = ()
    series: str | None = None   # grouping column for one-line-per-value
    filter_eq: tuple[str, str] | None = None
    heat_y: str | None = None
    heat_value: str | None = None
    title: str = ""
    x_label: str = ""
    y_label: str = ""
    hline_column: str | None = None


@dataclass(frozen=True)
class FigureSpec:
    experiment_id: str
    panels: tuple[Panel, ...]
    output_stem: str = ""
    tabular_only: bool = False

    def __post_init__(self):
        if not self.output_stem:
            object.__setattr__(self, "output_stem", self.experiment_id)

    @property
    def required_columns(self) -> set[str]:
        cols: set[str] = set()
        for p in self.panels:
            cols.add(p.x)
            cols.update(c.column for c in p.curves)
            if p.series:
                cols.add(p.series)
            if p.filter_eq:
                cols.add(p.filter_eq[0])
            if p.heat_y:
                cols.add(p.heat_y)
            if p.heat_value:
                cols.add(p.heat_value)
        return cols


def _mixed_family_panel(series: str, series_name: str) -> Panel:
    return Panel(
        kind="line",
        x="delta",
        series=series,
        curves=(
            Curve("p_not_all_zero", "solid",
                  label="not all-zero controls"),
            Curve("p_odd", "dashed", label="odd parity"),
        ),
        x_label="mixedness delta",
        y_label="probability",
        title=f"per-{series_name} curves: solid = not-all-zero, "
              f"dashed = odd parity",
    )


FIGURE_SPECS: dict[str, FigureSpec] = {}


def _add(spec: FigureSpec):
    FIGURE_SPECS[spec.experiment_id] = spec


_add(FigureSpec("mixed-bell", (_mixed_family_panel("c2", "concurrence"),)))
_add(FigureSpec("mixed-ghz", (_mixed_family_panel("epsilon", "deviation"),)))
_add(FigureSpec("mixed-w", (_mixed_family_panel("epsilon", "deviation"),)))
_add(FigureSpec("qudit-seesaw", (_mixed_family_panel("D", "dimension"),)))

_add(FigureSpec("qudit-vs-qubit", (
    Panel(kind="scatter", x="D", series="kind",
          curves=(Curve("signature", marker="x"),),
          x_label="qudit dimension (matched for qubit rows)",
          y_label="entanglement signature",
          title="qudit pairs vs multiqubit states"),
)))

_add(FigureSpec("haar-comparison", (
    Panel(kind="scatter", x="ce", series="n",
          curves=(
              Curve("p_even_nonzero", marker=".",
                    label="general test"),
              Curve("per_trial_cut_rate", marker="x",
                    label="cut tests per trial"),
          ),
          x_label="concentratable entanglement",
          y_label="detection probability",
          title="general vs summed-cut detection on Haar states"),
)))

_add(FigureSpec("squeezed-equiv", (
    Panel(kind="line", x="r", series="alpha",
          curves=(
              Curve("p1_numeric", "solid", label="truncated circuit"),
              Curve("p1_analytic", "dashed", label="sech form"),
          ),
          x_label="squeeze parameter r", y_label="P(control 1)",
          title="coherent vs squeezed-coherent discrimination"),
)))

_add(FigureSpec("squeezed-cat", (
    Panel(kind="line", x="phi2", series="r",
          filter_eq=("section", "phase_scan"),
          curves=(
              Curve("p1_numeric", "solid", label="numeric"),
              Curve("p1_analytic", "dashed", label="analytic"),
          ),
          x_label="relative phase", y_label="P(control 1)",
          title="phase scan at unit amplitude"),
    Panel(kind="line", x="alpha", series="r",
          filter_eq=("section", "amplitude_scan"),
          curves=(
              Curve("p1_analytic", "dashed", label="analytic"),
              Curve("p1_numeric", "solid", label="numeric (r <= 1.5)"),
          ),
          x_label="coherent amplitude", y_label="P(control 1)",
          title="amplitude scan; numeric only inside the "
                "truncation-valid squeeze range"),
)))

_add(FigureSpec("ecs-general", (
    Panel(kind="line", x="alpha", series="c2_label",
          curves=(Curve("p11", "solid"),),
          x_label="coherent amplitude", y_label="P(11)",
          title="two-mode superpositions by concurrence-analogue label"),
)))

_add(FigureSpec("ecvs-vs-ecsplus", (
    Panel(kind="line", x="alpha", series="family",
          curves=(
              Curve("p11", "solid", label="engine"),
              Curve("candidate_form", "dashed",
                    label="candidate closed form (disagrees)"),
          ),
          x_label="coherent amplitude", y_label="P(11)",
          title="engine vs candidate closed forms; the gap is the "
                "documented discrepancy"),
)))

_add(FigureSpec("ecs-qudit", (
    Panel(kind="line", x="alpha", filter_eq=("section", "compare"),
          curves=(
              Curve("p11_fock", "solid", label="full truncated basis"),
              Curve("p11_qudit", "dashed", label="finite-level state"),
          ),
          x_label="coherent amplitude", y_label="P(11)",
          title="signature comparison at the working dimension"),
    Panel(kind="heatmap", x="alpha", heat_y="D", heat_value="qudit_norm",
          filter_eq=("section", "norm"),
          x_label="coherent amplitude", y_label="levels D",
          title="retained norm fraction"),
)))

_add(FigureSpec("tmsv", (
    Panel(kind="line", x="r", filter_eq=("section", "signature"),
          curves=(
              Curve("p11", "solid", label="engine"),
              Curve("sum_form", "dashed", label="double-sum form"),
          ),
          hline_column="qudit_limit",
          x_label="squeeze parameter r", y_label="P(11)",
          title="two-mode squeezed vacuum signature"),
    Panel(kind="heatmap", x="r", heat_y="D", heat_value="norm",
          filter_eq=("section", "norm"),
          x_label="squeeze parameter r", y_label="levels D",
          title="truncated norm"),
)))

_add(FigureSpec("bipartite-tables", (), tabular_only=True))
_add(FigureSpec("two-party-tables", (), tabular_only=True))
