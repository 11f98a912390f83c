import init, { knots, expansion, transform_sweep } from "./pkg/knotmodel_web.js";

const $ = (id) => document.getElementById(id);

function guard(out, f) {
  try {
    f();
  } catch (e) {
    out.innerHTML = `<span class="error">${e}</span>`;
  }
}

// parses "O1U2O3..." into [{id, over}]
function parseCode(code) {
  return [...code.matchAll(/([OU])(\d+)/g)].map((m) => ({ id: +m[2], over: m[1] === "O" }));
}

// Gauss diagram: passages around a circle, a chord per crossing, arrow toward the under-passage
function drawGauss(code, size = 150) {
  const canvas = document.createElement("canvas");
  canvas.width = canvas.height = size;
  const ctx = canvas.getContext("2d");
  const seq = parseCode(code);
  const c = size / 2, r = size / 2 - 14;
  ctx.strokeStyle = "#888";
  ctx.beginPath();
  ctx.arc(c, c, r, 0, 2 * Math.PI);
  ctx.stroke();
  const at = (i) => {
    const t = (2 * Math.PI * i) / seq.length - Math.PI / 2;
    return [c + r * Math.cos(t), c + r * Math.sin(t)];
  };
  const ends = new Map();
  seq.forEach((p, i) => {
    const e = ends.get(p.id) || {};
    e[p.over ? "over" : "under"] = at(i);
    ends.set(p.id, e);
  });
  ctx.strokeStyle = "#2256a8";
  ctx.fillStyle = "#2256a8";
  for (const { over, under } of ends.values()) {
    if (!over || !under) continue;
    ctx.beginPath();
    ctx.moveTo(...over);
    ctx.lineTo(...under);
    ctx.stroke();
    const a = Math.atan2(under[1] - over[1], under[0] - over[0]);
    ctx.beginPath();
    ctx.moveTo(...under);
    ctx.lineTo(under[0] - 9 * Math.cos(a - 0.35), under[1] - 9 * Math.sin(a - 0.35));
    ctx.lineTo(under[0] - 9 * Math.cos(a + 0.35), under[1] - 9 * Math.sin(a + 0.35));
    ctx.fill();
  }
  ctx.fillStyle = "#222";
  ctx.font = "10px monospace";
  seq.forEach((p, i) => {
    const [x, y] = at(i);
    const dx = x - c, dy = y - c, n = Math.hypot(dx, dy);
    ctx.fillText(`${p.over ? "O" : "U"}${p.id}`, x + (dx / n) * 8 - 7, y + (dy / n) * 8 + 3);
  });
  return canvas;
}

function runKnots() {
  guard($("knot-summary"), () => {
    const k = +$("knot-k").value;
    const data = JSON.parse(knots(k, "action", $("knot-action").value));
    $("knot-summary").textContent =
      `${data.records.length} labelled pairings, ${data.groups.length} distinct Gauss codes at order ${k}`;
    const box = $("codes");
    box.replaceChildren();
    for (const g of data.groups) {
      const fig = document.createElement("figure");
      fig.append(drawGauss(g.canonical));
      const cap = document.createElement("figcaption");
      cap.textContent = `${g.canonical} ×${g.count}` + (g.reduced !== g.canonical ? ` → ${g.reduced || "unknot"}` : "");
      fig.append(cap);
      box.append(fig);
    }
  });
}

function coeffText(t) {
  const part = (num, den) => (den === 1 || den === "1" ? `${num}` : `${num}/${den}`);
  const re = `${t.re_num}` !== "0" ? part(t.re_num, t.re_den) : "";
  const im = `${t.im_num}` !== "0" ? part(t.im_num, t.im_den) + "i" : "";
  return re && im ? `${re} + ${im}` : re || im || "0";
}

function runExpansion() {
  guard($("exp-f"), () => {
    const data = JSON.parse(expansion(+$("exp-k").value, $("exp-conv").value, $("exp-action").value));
    $("exp-f").textContent = `vertex factor ${data.coupling}\nF(g) = ${data.f_of_g.text}`;
    const rows = data.flp.entries.flatMap((e) =>
      e.terms.map((t) => `<tr><td>${e.l}</td><td>${e.p}</td><td>${t.k}</td><td>${coeffText(t)}</td></tr>`)
    );
    $("exp-table").innerHTML =
      `<table><tr><th>l</th><th>p</th><th>order g^k</th><th>coefficient</th></tr>${rows.join("")}</table>`;
  });
}

function runSweep() {
  const canvas = $("tr-plot");
  const ctx = canvas.getContext("2d");
  const eps = Array.from({ length: 60 }, (_, i) => 10 ** (-3 + (3.3 * i) / 59));
  let data;
  try {
    data = JSON.parse(transform_sweep(+$("tr-n").value, +$("tr-d").value, +$("tr-f").value, +$("tr-g").value, Float64Array.from(eps)));
  } catch (e) {
    $("status").innerHTML = `<span class="error">${e}</span>`;
    return;
  }
  $("status").textContent = "";
  const W = canvas.width, H = canvas.height, pad = 40;
  const ys = data.points.map((p) => Math.log10(p.abs)).concat([Math.log10(data.limit.abs)]);
  const ymin = Math.min(...ys), ymax = Math.max(...ys) + 1e-9;
  const X = (e) => pad + ((Math.log10(e) + 3) / 3.3) * (W - 2 * pad);
  const Y = (v) => H - pad - ((Math.log10(v) - ymin) / (ymax - ymin)) * (H - 2 * pad);
  ctx.clearRect(0, 0, W, H);
  ctx.strokeStyle = "#888";
  ctx.strokeRect(pad, pad, W - 2 * pad, H - 2 * pad);
  ctx.fillStyle = "#222";
  ctx.font = "11px sans-serif";
  ctx.fillText("ε (log)", W / 2, H - 10);
  ctx.fillText(`log10 |TΦ|: ${ymin.toFixed(2)} … ${ymax.toFixed(2)}`, pad, pad - 10);
  ctx.setLineDash([5, 4]);
  ctx.beginPath();
  ctx.moveTo(pad, Y(data.limit.abs));
  ctx.lineTo(W - pad, Y(data.limit.abs));
  ctx.stroke();
  ctx.setLineDash([]);
  ctx.strokeStyle = "#b5402a";
  ctx.beginPath();
  data.points.forEach((p, i) => (i ? ctx.lineTo(X(p.eps), Y(p.abs)) : ctx.moveTo(X(p.eps), Y(p.abs))));
  ctx.stroke();
}

await init();
$("knot-run").onclick = runKnots;
$("exp-run").onclick = runExpansion;
$("tr-run").onclick = runSweep;
runKnots();
runExpansion();
runSweep();
