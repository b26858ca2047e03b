#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "nuqsim/compile.hpp"
#include "nuqsim/errors.hpp"

namespace nuqsim {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string dump_circuit(const Circuit& c) {
  std::ostringstream os;
  os << "width " << c.width() << '\n';
  for (const auto& g : c.ops()) {
    os << gate_name(g.kind);
    switch (g.kind) {
      case GateKind::kRY:
      case GateKind::kRZ:
        os << ' ' << num(g.angles[0]);
        break;
      case GateKind::kU:
        os << ' ' << num(g.angles[0]) << ' ' << num(g.angles[1]) << ' ' << num(g.angles[2]);
        break;
      case GateKind::kUnitary2Q:
        for (const auto& z : g.matrix->a) os << ' ' << num(z.real()) << ' ' << num(z.imag());
        break;
      default:
        break;
    }
    os << ' ' << g.qubits[0];
    if (g.is_two_qubit()) os << ' ' << g.qubits[1];
    os << '\n';
  }
  return os.str();
}

Circuit parse_circuit(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int width = -1;
  std::vector<GateOp> ops;
  while (std::getline(in, line)) {
    ++lineno;
    const auto fail = [&](const std::string& what) {
      return InvalidGateError("circuit line " + std::to_string(lineno) + ": " + what);
    };
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind) || kind[0] == '#') continue;
    if (width < 0) {
      if (kind != "width" || !(ls >> width)) throw fail("expected 'width N' header");
      continue;
    }
    auto read = [&](auto& v) {
      if (!(ls >> v)) throw fail("missing or malformed operand for '" + kind + "'");
    };
    GateOp g;
    if (kind == "x" || kind == "sx" || kind == "measure") {
      int q;
      read(q);
      g = kind == "x" ? GateOp::x(q) : kind == "sx" ? GateOp::sx(q) : GateOp::measure(q);
    } else if (kind == "ry" || kind == "rz") {
      double a;
      int q;
      read(a);
      read(q);
      g = kind == "ry" ? GateOp::ry(a, q) : GateOp::rz(a, q);
    } else if (kind == "u") {
      double t, p, l;
      int q;
      read(t);
      read(p);
      read(l);
      read(q);
      g = GateOp::u(t, p, l, q);
    } else if (kind == "cx") {
      int c, t;
      read(c);
      read(t);
      g = GateOp::cnot(c, t);
    } else if (kind == "unitary2q") {
      Mat4 m;
      for (auto& z : m.a) {
        double re, im;
        read(re);
        read(im);
        z = {re, im};
      }
      int q0, q1;
      read(q0);
      read(q1);
      g = GateOp::unitary2q(m);
      g.qubits = {q0, q1};
    } else {
      throw fail("unknown gate '" + kind + "'");
    }
    std::string extra;
    if (ls >> extra) throw fail("trailing token '" + extra + "'");
    ops.push_back(std::move(g));
  }
  if (width < 0) throw InvalidGateError("circuit text has no 'width N' header");
  return Circuit(width, std::move(ops));
}

}  // namespace nuqsim
