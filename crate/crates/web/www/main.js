import init, { shapeTransforms, shapeBetti, imageTransforms } from "./pkg/euler_web.js";

const $ = (id) => document.getElementById(id);

function show(target, fn) {
  try {
    return fn();
  } catch (e) {
    target.innerHTML = `<p class="err">${e}</p>`;
    return null;
  }
}

function render() {
  const angle = Number($("angle").value);
  $("angle-out").textContent = `${angle}°`;
  const shape = $("shape").value;

  show($("shape-plots"), () => {
    const out = JSON.parse(shapeTransforms(shape, angle, $("window").value));
    const w = out.sect.bundle.metadata.window;
    $("shape-info").textContent =
      `v = (${out.direction}), W = ${w}, inverse of SECT equals ECT: ${out.round_trip}`;
    $("shape-plots").innerHTML = out.ect.svg + out.sect.svg;
  });

  show($("betti-plot"), () => {
    const out = JSON.parse(shapeBetti(shape, angle, Number($("k").value)));
    $("betti-plot").innerHTML = out.betti.svg;
  });

  show($("image-plots"), () => {
    const out = JSON.parse(imageTransforms($("csv").value, angle, $("convention").value));
    $("image-plots").innerHTML = out.ert.svg + out.sert.svg;
  });
}

await init();
for (const id of ["shape", "angle", "window", "k", "csv", "convention"]) {
  $(id).addEventListener("input", render);
}
render();
