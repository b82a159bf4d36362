import init, { mantissaHistogram, weylCurve, fourierDecay } from "./pkg/benford_walk_web.js";

const x = Math.SQRT2 - 1;
const PRESETS = {
  geometric: { base: 10, seed: 1, length: 10000, generator: { family: "constant", c: 2 } },
  pairs: { base: 10, seed: 7, length: 64, trajectories: 2000, harmonics: [1, 2],
    generator: { family: "counterexample_pairs" } },
  lognormal: { base: 10, seed: 11, length: 30, trajectories: 5000, harmonics: [1, 2],
    generator: { family: "iid_lognormal", mu: 0, sigma: 1 } },
  atoms: { base: 10, seed: 5, length: 64, trajectories: 2000, harmonics: [1, 2],
    generator: { family: "iid_atoms", atoms: [
      { value: 10 ** x, prob: 0.5 }, { value: 10 ** (x + 0.5), prob: 0.5 }] } },
  ar1: { base: 10, seed: 3, length: 20000, harmonics: [1, 2, 3],
    generator: { family: "gaussian_ar1", phi: 0.5, sigma: 1, mean: 0 } },
  onedep: { base: 10, seed: 21, length: 40, trajectories: 5000, harmonics: [1],
    generator: { family: "one_dependent", kernel: "exp_sum", dist_z: { dist: "normal", mu: 0, sigma: 1 } } },
};
const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

const $ = (id) => document.getElementById(id);
const canvas = $("plot");
const ctx = canvas.getContext("2d");

function loadPreset() {
  $("scenario").value = JSON.stringify(PRESETS[$("preset").value], null, 2);
}

function frame(xmin, xmax, ymin, ymax, logx) {
  const pad = { l: 50, r: 10, t: 10, b: 30 };
  const w = canvas.width - pad.l - pad.r;
  const h = canvas.height - pad.t - pad.b;
  const fx = logx ? Math.log10 : (v) => v;
  const [a, b] = [fx(xmin), fx(xmax)];
  const px = (v) => pad.l + ((fx(v) - a) / (b - a || 1)) * w;
  const py = (v) => pad.t + (1 - (v - ymin) / (ymax - ymin || 1)) * h;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.strokeStyle = "#888";
  ctx.strokeRect(pad.l, pad.t, w, h);
  ctx.fillStyle = "#444";
  ctx.font = "11px sans-serif";
  ctx.fillText(ymax.toPrecision(3), 4, pad.t + 10);
  ctx.fillText(ymin.toPrecision(3), 4, pad.t + h);
  ctx.fillText(String(xmin), pad.l, canvas.height - 10);
  ctx.fillText(String(xmax), pad.l + w - 40, canvas.height - 10);
  return { px, py };
}

function polyline(xs, ys, px, py, color, dashed) {
  ctx.beginPath();
  ctx.setLineDash(dashed ? [5, 4] : []);
  ctx.strokeStyle = color;
  let started = false;
  xs.forEach((xv, i) => {
    const yv = ys[i];
    if (yv === null || !Number.isFinite(yv)) { started = false; return; }
    if (started) ctx.lineTo(px(xv), py(yv)); else ctx.moveTo(px(xv), py(yv));
    started = true;
  });
  ctx.stroke();
  ctx.setLineDash([]);
}

function drawHistogram(r) {
  const bins = r.density.length;
  const ymax = Math.max(1.2, ...r.density);
  const { px, py } = frame(0, 1, 0, ymax, false);
  ctx.fillStyle = "#9ecae1";
  r.density.forEach((d, i) => {
    const x0 = px(i / bins), x1 = px((i + 1) / bins);
    ctx.fillRect(x0, py(d), x1 - x0 - 1, py(0) - py(d));
  });
  polyline([0, 1], [1, 1], px, py, "#d62728", true);
  const digits = r.digits.map((d) => `${d.digit}: ${d.freq.toFixed(4)} (${d.benford.toFixed(4)})`).join("  ");
  $("summary").textContent =
    `N = ${r.n}   KS = ${r.ks.toExponential(3)}   D* = ${r.dstar.toExponential(3)}` +
    (r.chi2 === null ? "" : `   chi2 = ${r.chi2.toFixed(2)}`) + `\nfirst digits (Benford): ${digits}`;
}

function drawWeyl(r) {
  const ymax = Math.max(...r.curves.flatMap((c) => c.abs));
  const { px, py } = frame(r.N[0], r.N[r.N.length - 1], 0, ymax, true);
  r.curves.forEach((c, i) => polyline(r.N, c.abs, px, py, COLORS[i % COLORS.length], false));
  $("summary").textContent = r.curves
    .map((c) => `h = ${c.h}: |T_N| at N = ${r.N[r.N.length - 1]} is ${c.abs[c.abs.length - 1].toExponential(3)}`)
    .join("\n");
}

function drawFourier(r) {
  const { px, py } = frame(r.n[0], r.n[r.n.length - 1], 0, 1, false);
  r.series.forEach((s, i) => {
    const color = COLORS[i % COLORS.length];
    polyline(r.n, s.abs, px, py, color, false);
    polyline(r.n, s.analytic, px, py, color, true);
  });
  $("summary").textContent =
    `solid: Monte Carlo over ${r.replicas} replicas; dashed: closed form where available\n` +
    r.series.map((s) => `h = ${s.h}: last |E| = ${s.abs[s.abs.length - 1].toFixed(4)}`).join("\n");
}

function action(fn, draw) {
  return () => {
    $("status").textContent = "";
    try {
      draw(JSON.parse(fn($("scenario").value)));
    } catch (e) {
      $("status").textContent = String(e.message ?? e);
    }
  };
}

await init();
$("preset").addEventListener("change", loadPreset);
$("hist").addEventListener("click", action((s) => mantissaHistogram(s, Number($("bins").value)), drawHistogram));
$("weyl").addEventListener("click", action(weylCurve, drawWeyl));
$("fourier").addEventListener("click", action(fourierDecay, drawFourier));
loadPreset();
