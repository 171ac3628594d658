import init, { catalog_listing, certify, quotients } from "./pkg/gassmann_wasm.js";

const $ = (id) => document.getElementById(id);
let entries = [];

function current() {
  return entries.find((e) => e.name === $("entry").value);
}

function flag(ok, yes, no) {
  return `<span class="${ok ? "ok" : "bad"}">${ok ? yes : no}</span>`;
}

function showError(target, e) {
  $(target).innerHTML = `<p class="err">${e.message ?? e}</p>`;
}

function runCertify() {
  try {
    const r = JSON.parse(certify($("entry").value));
    const c = r.certificate;
    let html = `<p>|G| = ${c.orders.group}, |H1| = ${c.orders.h1}, |H2| = ${c.orders.h2}.
      Class profiles ${flag(c.is_gassmann, "agree", "differ")};
      conjugate: ${c.conjugacy_witness === null ? "no" : "yes, by " + c.conjugacy_witness}.</p>
      <pre>class sizes ${JSON.stringify(c.class_sizes)}\nH1 profile  ${JSON.stringify(c.profile1)}\nH2 profile  ${JSON.stringify(c.profile2)}</pre>`;
    if (r.intertwiner) {
      const s = r.intertwiner;
      html += `<p>Intertwiner with phi = [${s.phi.join(", ")}], det = ${s.det}:</p>
        <pre>${s.matrix.map((row) => row.map((v) => String(v).padStart(3)).join("")).join("\n")}</pre>`;
    } else {
      html += `<p class="err">${r.intertwiner_error}</p>`;
    }
    $("certificate").innerHTML = html;
  } catch (e) {
    showError("certificate", e);
  }
}

function drawGraph(canvas, adj) {
  const ctx = canvas.getContext("2d");
  const n = adj.length;
  const w = canvas.width, h = canvas.height;
  const cx = w / 2, cy = h / 2, radius = Math.min(w, h) / 2 - 45;
  ctx.clearRect(0, 0, w, h);
  const pos = Array.from({ length: n }, (_, i) => {
    const t = (2 * Math.PI * i) / n - Math.PI / 2;
    return [cx + radius * Math.cos(t), cy + radius * Math.sin(t)];
  });
  ctx.font = "12px sans-serif";
  ctx.textAlign = "center";
  ctx.textBaseline = "middle";
  for (let i = 0; i < n; i++) {
    for (let j = i; j < n; j++) {
      const m = adj[i][j];
      if (m === 0) continue;
      ctx.strokeStyle = "#4a6fa5";
      ctx.lineWidth = 1 + m;
      ctx.beginPath();
      let lx, ly;
      if (i === j) {
        const [x, y] = pos[i];
        const dx = (x - cx) / radius, dy = (y - cy) / radius;
        lx = x + dx * 22;
        ly = y + dy * 22;
        ctx.arc(x + dx * 14, y + dy * 14, 12, 0, 2 * Math.PI);
      } else {
        ctx.moveTo(...pos[i]);
        ctx.lineTo(...pos[j]);
        lx = (pos[i][0] + pos[j][0]) / 2;
        ly = (pos[i][1] + pos[j][1]) / 2;
      }
      ctx.stroke();
      if (m > 1) {
        ctx.fillStyle = "#fff";
        ctx.fillRect(lx - 7, ly - 7, 14, 14);
        ctx.fillStyle = "#a02020";
        ctx.fillText(String(m), lx, ly);
      }
    }
  }
  for (let i = 0; i < n; i++) {
    const [x, y] = pos[i];
    ctx.fillStyle = "#222";
    ctx.beginPath();
    ctx.arc(x, y, 11, 0, 2 * Math.PI);
    ctx.fill();
    ctx.fillStyle = "#fff";
    ctx.fillText(String(i), x, y);
  }
}

function drawSpectra(canvas, spectra) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height;
  ctx.clearRect(0, 0, w, h);
  const all = spectra.flat();
  const max = Math.max(1, ...all);
  const x = (v) => 20 + ((w - 40) * v) / max;
  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(20, h / 2);
  ctx.lineTo(w - 20, h / 2);
  ctx.stroke();
  const colors = ["#4a6fa5", "#c06020"];
  spectra.forEach((spec, k) => {
    ctx.strokeStyle = colors[k];
    ctx.lineWidth = 2;
    for (const v of spec) {
      ctx.beginPath();
      ctx.moveTo(x(v), h / 2);
      ctx.lineTo(x(v), k === 0 ? h / 2 - 25 : h / 2 + 25);
      ctx.stroke();
    }
  });
  ctx.fillStyle = "#555";
  ctx.font = "11px sans-serif";
  ctx.fillText("0", 16, h - 6);
  ctx.fillText(max.toFixed(2), w - 40, h - 6);
}

function runQuotients() {
  try {
    const r = JSON.parse(quotients($("entry").value, $("gens").value));
    drawGraph($("g1"), r.adjacency[0]);
    drawGraph($("g2"), r.adjacency[1]);
    drawSpectra($("spectrum"), r.spectral.float_spectra);
    const iso = r.isomorphic === null ? "not checked" : r.isomorphic ? "yes" : "no";
    const comm = r.commutation === null ? "no intertwiner" : flag(r.commutation, "S·L1 = L2·S", "fails");
    $("verdicts").innerHTML = `<p>S = {${r.generating_set.join(", ")}}<br>
      Laplacian charpolys ${flag(r.spectral.equal, "equal", "differ")},
      zeta polynomials ${flag(r.zeta.equal, "equal", "differ")},
      isomorphic: ${iso}, commutation: ${comm}</p>
      <pre>det(xI - L1) coefficients ${r.spectral.charpoly1.join(" ")}\ndet(xI - L2) coefficients ${r.spectral.charpoly2.join(" ")}</pre>`;
  } catch (e) {
    showError("verdicts", e);
  }
}

function selectEntry() {
  const e = current();
  $("description").textContent = e.description;
  $("gens").value = e.default_gens;
  $("certificate").innerHTML = "";
  runQuotients();
}

await init();
entries = JSON.parse(catalog_listing());
for (const e of entries) {
  const opt = document.createElement("option");
  opt.value = e.name;
  opt.textContent = `${e.name} (${e.h1} vs ${e.h2})`;
  $("entry").appendChild(opt);
}
$("entry").addEventListener("change", selectEntry);
$("certify").addEventListener("click", runCertify);
$("draw").addEventListener("click", runQuotients);
selectEntry();
