#include "hampack/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hampack {

namespace {

// Next non-comment, non-blank line; false at EOF.
bool next_data_line(std::istream& is, std::string& line) {
  while (std::getline(is, line)) {
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') continue;
    return true;
  }
  return false;
}

std::vector<long long> parse_ints(const std::string& line) {
  std::istringstream ss(line);
  std::vector<long long> out;
  long long x;
  while (ss >> x) out.push_back(x);
  std::string tail;
  if (ss.fail() && !ss.eof() && ss >> tail)
    throw std::invalid_argument("unexpected token '" + tail + "' in line: " + line);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open file: " + path);
  return f;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot write file: " + path);
  return f;
}

}  // namespace

void write_kgraph(std::ostream& os, const KGraph& H) {
  os << H.n() << ' ' << H.k() << ' ' << H.edge_count() << '\n';
  for (const Edge& e : H.edges()) {
    for (int i = 0; i < e.size(); ++i) os << (i ? " " : "") << e.vertices()[static_cast<std::size_t>(i)];
    os << '\n';
  }
}

KGraph read_kgraph(std::istream& is) {
  std::string line;
  if (!next_data_line(is, line)) throw std::invalid_argument("read_kgraph: missing header line");
  auto header = parse_ints(line);
  if (header.size() != 3) throw std::invalid_argument("read_kgraph: header must be 'n k m'");
  int n = static_cast<int>(header[0]);
  int k = static_cast<int>(header[1]);
  long long m = header[2];
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_data_line(is, line))
      throw std::invalid_argument("read_kgraph: expected " + std::to_string(m) + " edges, got " + std::to_string(i));
    auto ids = parse_ints(line);
    if (static_cast<int>(ids.size()) != k)
      throw std::invalid_argument("read_kgraph: edge line with " + std::to_string(ids.size()) + " ids, expected " +
                                  std::to_string(k));
    std::vector<int> verts(ids.begin(), ids.end());
    for (std::size_t j = 1; j < verts.size(); ++j)
      if (verts[j] <= verts[j - 1]) throw std::invalid_argument("read_kgraph: edge ids must be strictly increasing");
    edges.push_back(Edge::from_sorted(std::move(verts)));
  }
  return KGraph(n, k, std::move(edges));
}

void write_kgraph_file(const std::string& path, const KGraph& H) {
  auto f = open_out(path);
  write_kgraph(f, H);
}

KGraph read_kgraph_file(const std::string& path) {
  auto f = open_in(path);
  return read_kgraph(f);
}

void write_shift_digraph(std::ostream& os, const ShiftDigraph& D) {
  os << "# shift-digraph k=" << D.params.k << " ell=" << D.params.ell << '\n';
  os << D.params.nu_q << ' ' << D.params.q << '\n';
  for (const QTuple& b : D.blocks) {
    for (std::size_t i = 0; i < b.size(); ++i) os << (i ? " " : "") << b[i];
    os << '\n';
  }
  for (std::size_t a = 0; a < D.arcs.size(); ++a) {
    os << D.arcs[a].first + 1 << ' ' << D.arcs[a].second + 1;
    for (const Edge& e : D.owned[a])
      for (int v : e.vertices()) os << ' ' << v;
    os << '\n';
  }
}

ShiftDigraph read_shift_digraph(std::istream& is) {
  int k = 0, ell = 0;
  std::string line;
  // The parameter comment may be preceded by other comments.
  while (std::getline(is, line)) {
    if (line.rfind("# shift-digraph", 0) == 0) {
      std::size_t kp = line.find("k=");
      std::size_t lp = line.find("ell=");
      if (kp == std::string::npos || lp == std::string::npos) break;
      k = std::stoi(line.substr(kp + 2));
      ell = std::stoi(line.substr(lp + 4));
      break;
    }
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos && line[first] != '#') break;  // data reached, no parameter comment
  }
  if (k == 0)
    throw std::invalid_argument("read_shift_digraph: missing '# shift-digraph k=.. ell=..' parameter comment");

  if (!next_data_line(is, line)) throw std::invalid_argument("read_shift_digraph: missing header");
  auto header = parse_ints(line);
  if (header.size() != 2) throw std::invalid_argument("read_shift_digraph: header must be 'nu_q q'");
  int nu_q = static_cast<int>(header[0]);
  int q = static_cast<int>(header[1]);

  ShiftDigraph D;
  D.params = derive_params(k, ell, nu_q * q);
  if (D.params.q != q) throw std::invalid_argument("read_shift_digraph: q inconsistent with k and ell");

  D.sigma.reserve(static_cast<std::size_t>(D.params.n));
  for (int b = 0; b < nu_q; ++b) {
    if (!next_data_line(is, line)) throw std::invalid_argument("read_shift_digraph: missing block line");
    auto ids = parse_ints(line);
    if (static_cast<int>(ids.size()) != q) throw std::invalid_argument("read_shift_digraph: block line width != q");
    QTuple blk(ids.begin(), ids.end());
    D.sigma.insert(D.sigma.end(), blk.begin(), blk.end());
    D.blocks.push_back(std::move(blk));
  }

  const int z = D.params.z;
  while (next_data_line(is, line)) {
    auto ids = parse_ints(line);
    if (static_cast<int>(ids.size()) != 2 + z * k)
      throw std::invalid_argument("read_shift_digraph: arc line must hold 'i j' plus " + std::to_string(z) +
                                  " edges of " + std::to_string(k) + " ids");
    int i = static_cast<int>(ids[0]) - 1;
    int j = static_cast<int>(ids[1]) - 1;
    if (i < 0 || j < 0 || i >= nu_q || j >= nu_q || i == j)
      throw std::invalid_argument("read_shift_digraph: bad arc endpoints in line: " + line);
    int arc = static_cast<int>(D.arcs.size());
    D.arcs.emplace_back(i, j);
    std::vector<Edge> owned;
    owned.reserve(static_cast<std::size_t>(z));
    for (int w = 0; w < z; ++w) {
      std::vector<int> verts;
      verts.reserve(static_cast<std::size_t>(k));
      for (int t = 0; t < k; ++t) verts.push_back(static_cast<int>(ids[static_cast<std::size_t>(2 + w * k + t)]));
      Edge e{std::move(verts)};
      D.edge_to_arc.emplace(e, arc);
      owned.push_back(std::move(e));
    }
    D.owned.push_back(std::move(owned));
  }
  if (!std::is_sorted(D.arcs.begin(), D.arcs.end()))
    throw std::invalid_argument("read_shift_digraph: arc lines must be sorted by (i,j)");
  return D;
}

void write_shift_digraph_file(const std::string& path, const ShiftDigraph& D) {
  auto f = open_out(path);
  write_shift_digraph(f, D);
}

ShiftDigraph read_shift_digraph_file(const std::string& path) {
  auto f = open_in(path);
  return read_shift_digraph(f);
}

Digraph read_digraph_arcs(std::istream& is) {
  std::string line;
  if (!next_data_line(is, line)) throw std::invalid_argument("read_digraph_arcs: missing header");
  auto header = parse_ints(line);
  if (header.size() != 2) throw std::invalid_argument("read_digraph_arcs: header must be 'nu_q q'");
  int nu_q = static_cast<int>(header[0]);
  int q = static_cast<int>(header[1]);
  for (int b = 0; b < nu_q; ++b) {
    if (!next_data_line(is, line)) throw std::invalid_argument("read_digraph_arcs: missing block line");
    if (static_cast<int>(parse_ints(line).size()) != q)
      throw std::invalid_argument("read_digraph_arcs: block line width != q");
  }
  std::vector<std::pair<int, int>> arcs;
  while (next_data_line(is, line)) {
    auto ids = parse_ints(line);
    if (ids.size() < 2) throw std::invalid_argument("read_digraph_arcs: arc line too short");
    arcs.emplace_back(static_cast<int>(ids[0]) - 1, static_cast<int>(ids[1]) - 1);
  }
  return Digraph::from_arcs(nu_q, std::move(arcs));
}

Digraph read_digraph_arcs_file(const std::string& path) {
  auto f = open_in(path);
  return read_digraph_arcs(f);
}

void write_cycles(std::ostream& os, const std::vector<TypeLCycle>& cycles) {
  for (const TypeLCycle& c : cycles) {
    for (std::size_t i = 0; i < c.vertex_order.size(); ++i) os << (i ? " " : "") << c.vertex_order[i];
    os << '\n';
  }
}

std::vector<std::vector<int>> read_cycle_orders(std::istream& is) {
  std::vector<std::vector<int>> out;
  std::string line;
  while (next_data_line(is, line)) {
    auto ids = parse_ints(line);
    out.emplace_back(ids.begin(), ids.end());
  }
  return out;
}

}  // namespace hampack
