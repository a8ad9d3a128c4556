import init, { presets, lsWords, normalForm, pbwTable } from "./pkg/rblie_web.js";

const $ = (id) => document.getElementById(id);

function show(el, f) {
  el.classList.remove("error");
  try {
    f();
  } catch (e) {
    el.classList.add("error");
    el.textContent = e.message ?? String(e);
  }
}

function pbwTableHtml(report) {
  const rows = report.rows
    .map((r) => `<tr><td>${r.degree}</td><td>${r.rdegree}</td><td>${r.rb}</td><td>${r.ra}</td></tr>`)
    .join("");
  const verdict = report.equal
    ? "<p>Terminal word sets are equal.</p>"
    : `<p>Sets differ; first difference <code>${report.first_difference}</code>.</p>`;
  return `<table><tr><th>degree</th><th>rdegree</th><th>RB</th><th>RA</th></tr>${rows}</table>${verdict}`;
}

await init();

const list = JSON.parse(presets());
for (const p of list) {
  $("preset").add(new Option(p.name, p.name));
}
const loadPreset = () => {
  $("presentation").value = list.find((p) => p.name === $("preset").value).json;
};
$("preset").addEventListener("change", loadPreset);
loadPreset();

$("nf-run").addEventListener("click", () =>
  show($("nf-out"), () => {
    const out = JSON.parse(normalForm($("presentation").value, $("weight").value, $("system").value, $("term").value));
    $("nf-out").textContent = `${out.input}\n  ↦ ${out.normal_form}`;
  }),
);

$("pbw-run").addEventListener("click", () =>
  show($("pbw-out"), () => {
    const deg = Number($("pbw-deg").value);
    const rdeg = Number($("pbw-rdeg").value);
    const out = JSON.parse(pbwTable($("presentation").value, $("weight").value, deg, rdeg));
    $("pbw-out").innerHTML = pbwTableHtml(out);
  }),
);

$("ls-run").addEventListener("click", () =>
  show($("ls-out"), () => {
    const out = JSON.parse(lsWords($("ls-alphabet").value, Number($("ls-deg").value)));
    $("ls-out").textContent = `counts by degree: ${out.counts.join(", ")}\n\n${out.words.join("\n")}`;
  }),
);
