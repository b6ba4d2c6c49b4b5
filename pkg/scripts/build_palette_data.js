// Regenerates src/chorocolor/data/colorbrewer.json from d3-scale-chromatic,
// which vendors the ColorBrewer scheme arrays verbatim.
// Usage: NODE_PATH=$(npm root -g)/d3/node_modules node scripts/build_palette_data.js
const c = require("d3-scale-chromatic");
const fs = require("fs");

const SEQUENTIAL = ["Blues", "BuGn", "BuPu", "GnBu", "Greens", "Greys", "OrRd",
  "Oranges", "PuBu", "PuBuGn", "PuRd", "Purples", "RdPu", "Reds",
  "YlGn", "YlGnBu", "YlOrBr", "YlOrRd"];
const DIVERGING = ["BrBG", "PRGn", "PiYG", "PuOr", "RdBu", "RdGy", "RdYlBu",
  "RdYlGn", "Spectral"];

const palettes = [];
for (const [names, type, kMax] of [[SEQUENTIAL, "sequential", 9], [DIVERGING, "diverging", 11]]) {
  for (const name of names) {
    const scheme = c["scheme" + name];
    if (!scheme) throw new Error("missing scheme " + name);
    for (let k = 3; k <= kMax; k++) {
      const colors = scheme[k];
      if (!colors || colors.length !== k) throw new Error(`bad ${name} k=${k}`);
      palettes.push({ name, type, colors: colors.slice() });
    }
  }
}
palettes.sort((a, b) =>
  a.colors.length - b.colors.length || a.type.localeCompare(b.type) || a.name.localeCompare(b.name));

const doc = {
  attribution: [
    "ColorBrewer color schemes by Cynthia A. Brewer, Geography, Pennsylvania State University.",
    "Copyright (c) 2002 Cynthia Brewer, Mark Harrower, and The Pennsylvania State University.",
    "Licensed under the Apache License, Version 2.0; see http://www.apache.org/licenses/LICENSE-2.0",
    "Values extracted from the colorbrewer2.org export (sequential and diverging schemes only).",
  ],
  palettes,
};
fs.writeFileSync("src/chorocolor/data/colorbrewer.json", JSON.stringify(doc, null, 1) + "\n");
console.log("wrote", palettes.length, "palettes");
