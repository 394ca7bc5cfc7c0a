#include "opbar/dot.hpp"

namespace opbar {

std::string render_dot(const Operad& q, const RawBarPoint& raw) {
  std::string out = "digraph barpoint {\n  rankdir=BT;\n  edge [dir=none];\n";
  out += "  root [shape=point, label=\"\"];\n";
  const Tree& t = raw.tree;
  auto esc = [](const std::string& s) {
    std::string o;
    for (char c : s) {
      if (c == '"' || c == '\\') o += '\\';
      o += c;
    }
    return o;
  };
  for (int v = 0; v < t.n_vertices(); ++v) {
    bool stable = t.arity(v) >= 2;
    out += "  v" + std::to_string(v) + " [shape=" + (stable ? "box" : "circle") +
           ", label=\"" + esc(q.elem_name(raw.labels[v])) + "\"];\n";
  }
  for (int l : t.labels())
    out += "  l" + std::to_string(l) + " [shape=none, label=\"" + std::to_string(l) + "\"];\n";
  auto endpoint = [&](EdgeId e) {
    return e.leaf ? "l" + std::to_string(e.id) : "v" + std::to_string(e.id);
  };
  for (EdgeId e : t.edges()) {
    int below = t.vertex_below(e);
    std::string from = below < 0 ? "root" : "v" + std::to_string(below);
    out += "  " + from + " -> " + endpoint(e) + " [label=\"" +
           rat_to_string(raw.weights.at(e)) + "\"];\n";
  }
  out += "}\n";
  return out;
}

std::string render_dot_basepoint() {
  return "digraph barpoint {\n  base [shape=doublecircle, label=\"*\"];\n}\n";
}

}  // namespace opbar
