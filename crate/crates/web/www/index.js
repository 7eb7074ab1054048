import init, { build, partition, sequential } from "./pkg/spgemm_hg_web.js";

const EXAMPLE_A = `%%MatrixMarket matrix coordinate pattern general
3 4 5
1 1
1 3
2 1
2 4
3 2
`;
const EXAMPLE_B = `%%MatrixMarket matrix coordinate pattern general
4 2 5
1 2
2 1
3 1
3 2
4 2
`;
const COLORS = ["#8dd3c7", "#fdb462", "#bebada", "#fb8072", "#80b1d3", "#b3de69", "#fccde5", "#d9d9d9"];

const $ = (id) => document.getElementById(id);

function show(id, f) {
  const out = $(id);
  out.classList.remove("err");
  try {
    const text = f();
    out.textContent = JSON.stringify(JSON.parse(text), (k, v) => (k === "parts" || k === "labels" ? undefined : v), 2);
    return JSON.parse(text);
  } catch (e) {
    out.classList.add("err");
    out.textContent = String(e);
    return null;
  }
}

function drawParts(r) {
  const grid = $("grid");
  grid.replaceChildren();
  if (!r) return;
  for (let v = 0; v < r.labels.length; v++) {
    const chip = document.createElement("span");
    chip.textContent = `${r.labels[v]}:${r.parts[v]} `;
    chip.style.background = COLORS[r.parts[v] % COLORS.length];
    chip.style.margin = "2px";
    chip.style.padding = "1px 4px";
    chip.style.display = "inline-block";
    chip.style.fontFamily = "monospace";
    grid.appendChild(chip);
  }
}

function reset() {
  $("a").value = EXAMPLE_A;
  $("b").value = EXAMPLE_B;
}

await init();
reset();
$("reset").onclick = reset;
$("do-build").onclick = () =>
  show("out-build", () => build($("a").value, $("b").value, $("model").value, $("data").checked));
$("do-part").onclick = () => {
  const r = show("out-part", () =>
    partition($("a").value, $("b").value, $("model").value, Number($("p").value), Number($("eps").value),
      Number($("seed").value), $("objective").value));
  drawParts(r);
};
$("do-seq").onclick = () =>
  show("out-seq", () => sequential($("a").value, $("b").value, Number($("m").value)));
