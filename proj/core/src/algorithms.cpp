#include "daic/algorithms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <type_traits>
#include <utility>

#include "daic/errors.hpp"

namespace daic {

namespace {

template <class S>
struct Scalar;

template <>
struct Scalar<double> {
  static double from(double x) { return x; }
  static double sample(Rng& rng) { return rng.uniform(0.0, 4.0); }
};

template <>
struct Scalar<Rational> {
  // Decimal reading of the shortest round-trip form, so 0.8 becomes 4/5
  // rather than the exact binary fraction.
  static Rational from(double x) {
    char buf[512];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed);
    if (ec != std::errc()) return Rational(x);
    std::string digits;
    std::size_t frac = 0;
    bool after_point = false;
    for (const char* p = buf; p != ptr; ++p) {
      if (*p == '.') {
        after_point = true;
      } else {
        digits += *p;
        if (after_point) ++frac;
      }
    }
    using boost::multiprecision::cpp_int;
    const bool negative = !digits.empty() && digits.front() == '-';
    if (negative) digits.erase(0, 1);
    // cpp_int reads a leading 0 as octal.
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    cpp_int numerator(digits);
    if (negative) numerator = -numerator;
    return Rational(numerator, boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(frac)));
  }
  static Rational sample(Rng& rng) {
    return Rational(static_cast<long long>(rng.uniform_below(1000)),
                    static_cast<long long>(1 + rng.uniform_below(64)));
  }
};

template <class S>
double as_real(const S& x) {
  return ValueTraits<S>::to_real(x);
}

template <class S>
S count(std::size_t n) {
  return S(static_cast<unsigned long long>(n));
}

template <class S>
Kernel<S> additive(std::string name) {
  Kernel<S> k;
  k.name = std::move(name);
  k.accumulate = [](const S& a, const S& b) { return S(a + b); };
  k.zero = S(0);
  k.progress_of = [](const S& x) { return as_real(x); };
  k.sample_value = [](Rng& rng) { return Scalar<S>::sample(rng); };
  k.direction = Direction::increasing;
  k.idempotent = false;
  return k;
}

// v0 = 0 and dv1 = c_j, the common shape of every additive kernel here.
template <class S, class C>
void constant_init(Kernel<S>& k, C constant) {
  k.constant = constant;
  k.init = [constant](const VertexRef& v) { return InitialState<S>{S(0), constant(v)}; };
}

template <class S>
auto indicator(VertexId source) {
  return [source](const VertexRef& v) { return v.vid == source ? S(1) : S(0); };
}

std::size_t isqrt(std::size_t n) {
  auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

Kernel<double> sssp_kernel(VertexId source) {
  Kernel<double> k;
  k.name = "sssp";
  k.g = [](const EdgeRef& e, const double& x) { return x + e.weight; };
  k.accumulate = [](const double& a, const double& b) { return std::min(a, b); };
  k.zero = kInf;
  k.constant = [source](const VertexRef& v) { return v.vid == source ? 0.0 : kInf; };
  k.init = [source](const VertexRef& v) {
    return InitialState<double>{kInf, v.vid == source ? 0.0 : kInf};
  };
  k.progress_of = [](const double& x) { return std::isfinite(x) ? x : 0.0; };
  // d - min(d, Δd); a first finite distance outranks any improvement.
  k.priority_of = [](const double& v, const double& dv) {
    if (!(dv < v)) return 0.0;
    if (std::isinf(v)) return kInf;
    return v - dv;
  };
  k.sample_value = [](Rng& rng) { return rng.uniform01() < 0.05 ? kInf : rng.uniform(0.0, 100.0); };
  k.direction = Direction::none;
  k.idempotent = true;
  return k;
}

Kernel<double> cc_kernel() {
  Kernel<double> k;
  k.name = "connected_components";
  k.g = [](const EdgeRef&, const double& x) { return x; };
  k.accumulate = [](const double& a, const double& b) { return std::max(a, b); };
  k.zero = -kInf;
  k.constant = [](const VertexRef& v) { return static_cast<double>(v.vid); };
  k.init = [](const VertexRef& v) { return InitialState<double>{-1.0, static_cast<double>(v.vid)}; };
  k.progress_of = [](const double& x) { return std::isfinite(x) ? x : 0.0; };
  k.sample_value = [](Rng& rng) {
    return rng.uniform01() < 0.05 ? -kInf : static_cast<double>(rng.uniform_below(1000));
  };
  k.direction = Direction::increasing;
  k.idempotent = true;
  return k;
}

void require_range(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::pagerank: return "pagerank";
    case Algorithm::sssp: return "sssp";
    case Algorithm::connected_components: return "connected_components";
    case Algorithm::adsorption: return "adsorption";
    case Algorithm::hits_authority: return "hits_authority";
    case Algorithm::katz: return "katz";
    case Algorithm::jacobi: return "jacobi";
    case Algorithm::simrank: return "simrank";
    case Algorithm::rooted_pagerank: return "rooted_pagerank";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : kAllAlgorithms) {
    if (name == to_string(a)) return a;
  }
  if (name == "cc") return Algorithm::connected_components;
  if (name == "hits") return Algorithm::hits_authority;
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

bool is_selective(Algorithm a) {
  return a == Algorithm::sssp || a == Algorithm::connected_components;
}

void validate(const AlgorithmSpec& spec, const Graph& input) {
  const auto name = std::string(to_string(spec.algorithm));
  switch (spec.algorithm) {
    case Algorithm::pagerank:
      require_range(spec.damping > 0 && spec.damping < 1, "pagerank: d must be in (0, 1)");
      break;
    case Algorithm::simrank:
      require_range(spec.simrank_c > 0 && spec.simrank_c < 1, "simrank: C must be in (0, 1)");
      break;
    case Algorithm::katz:
      require_range(spec.beta > 0 && std::isfinite(spec.beta), "katz: beta must be positive");
      break;
    case Algorithm::rooted_pagerank:
      require_range(spec.rooted_damping > 0 && spec.rooted_damping <= 1,
                    "rooted_pagerank: damping must be in (0, 1]");
      break;
    case Algorithm::hits_authority:
      require_range(!spec.hits_damping || (*spec.hits_damping > 0 && std::isfinite(*spec.hits_damping)),
                    "hits_authority: d must be positive");
      break;
    case Algorithm::adsorption:
      require_range(spec.labels >= 1, "adsorption: need at least one label");
      require_range(spec.p_cont >= 0 && spec.p_cont < 1, "adsorption: p_cont must be in [0, 1)");
      require_range(spec.p_inj > 0 && spec.p_inj <= 1, "adsorption: p_inj must be in (0, 1]");
      break;
    case Algorithm::jacobi:
      if (!spec.system) throw ConfigError("jacobi: a linear system is required");
      validate(*spec.system);
      break;
    case Algorithm::sssp:
    case Algorithm::connected_components:
      break;
  }
  const bool needs_source = spec.algorithm == Algorithm::sssp || spec.algorithm == Algorithm::katz ||
                            spec.algorithm == Algorithm::rooted_pagerank;
  if (needs_source) {
    if (!spec.source) throw ConfigError(name + ": a source vertex is required");
    if (!input.contains(*spec.source)) {
      throw ConfigError(name + ": source " + std::to_string(*spec.source) + " is not in the graph");
    }
  }
  if (spec.algorithm == Algorithm::simrank && input.vertex_count() == 0) {
    throw ConfigError("simrank: empty graph");
  }
}

Graph computation_graph(const AlgorithmSpec& spec, const Graph& input) {
  switch (spec.algorithm) {
    case Algorithm::jacobi:
      if (!spec.system) throw ConfigError("jacobi: a linear system is required");
      return jacobi_to_graph(*spec.system);

    case Algorithm::simrank:
      return build_nodepair_graph(input, spec.nodepair_limit).graph;

    case Algorithm::hits_authority: {
      std::map<std::pair<VertexId, VertexId>, double> product;
      for (std::size_t k = 0; k < input.vertex_count(); ++k) {
        const auto out = input.out_edges_at(k);
        for (const Edge& ki : out) {
          for (const Edge& kj : out) product[{ki.target, kj.target}] += ki.weight * kj.weight;
        }
      }
      GraphBuilder builder;
      for (VertexId vid : input.vertices()) builder.add_vertex(vid);
      for (const auto& [ij, w] : product) {
        if (w != 0.0) builder.add_edge(ij.first, ij.second, w);
      }
      return std::move(builder).build();
    }

    case Algorithm::rooted_pagerank: {
      GraphBuilder builder;
      for (VertexId vid : input.vertices()) builder.add_vertex(vid);
      for (std::size_t j = 0; j < input.vertex_count(); ++j) {
        double total = 0.0;
        for (const Edge& e : input.out_edges_at(j)) total += e.weight;
        for (const Edge& e : input.out_edges_at(j)) {
          builder.add_edge(e.target, input.vid_at(j), e.weight / total);
        }
      }
      return std::move(builder).build();
    }

    case Algorithm::adsorption: {
      std::vector<double> in_weight(input.vertex_count(), 0.0);
      for (std::size_t i = 0; i < input.vertex_count(); ++i) {
        for (const Edge& e : input.out_edges_at(i)) in_weight[input.index_of(e.target)] += e.weight;
      }
      GraphBuilder builder;
      for (VertexId vid : input.vertices()) builder.add_vertex(vid);
      for (std::size_t i = 0; i < input.vertex_count(); ++i) {
        for (const Edge& e : input.out_edges_at(i)) {
          builder.add_edge(input.vid_at(i), e.target, e.weight / in_weight[input.index_of(e.target)]);
        }
      }
      return std::move(builder).build();
    }

    default:
      return input;
  }
}

double hits_damping(const AlgorithmSpec& spec, const Graph& computation) {
  if (spec.hits_damping) return *spec.hits_damping;
  std::vector<double> column(computation.vertex_count(), 0.0);
  for (std::size_t i = 0; i < computation.vertex_count(); ++i) {
    for (const Edge& e : computation.out_edges_at(i)) {
      column[computation.index_of(e.target)] += std::abs(e.weight);
    }
  }
  const double widest = column.empty() ? 0.0 : *std::max_element(column.begin(), column.end());
  return widest > 0.0 ? 0.5 / widest : 0.5;
}

template <class S>
Kernel<S> build_scalar_kernel(const AlgorithmSpec& spec, const Graph& graph) {
  switch (spec.algorithm) {
    case Algorithm::pagerank: {
      auto k = additive<S>("pagerank");
      const S d = Scalar<S>::from(spec.damping);
      const S teleport = S(1) - d;
      k.g = [d](const EdgeRef& e, const S& x) { return S(d * x / count<S>(e.source_out_degree)); };
      constant_init(k, [teleport](const VertexRef&) { return teleport; });
      return k;
    }
    case Algorithm::hits_authority: {
      auto k = additive<S>("hits_authority");
      const S d = Scalar<S>::from(hits_damping(spec, graph));
      k.g = [d](const EdgeRef& e, const S& x) { return S(d * Scalar<S>::from(e.weight) * x); };
      constant_init(k, [](const VertexRef&) { return S(1); });
      return k;
    }
    case Algorithm::katz: {
      if (!spec.source) throw ConfigError("katz: a source vertex is required");
      auto k = additive<S>("katz");
      const S beta = Scalar<S>::from(spec.beta);
      k.g = [beta](const EdgeRef& e, const S& x) { return S(beta * Scalar<S>::from(e.weight) * x); };
      constant_init(k, indicator<S>(*spec.source));
      return k;
    }
    case Algorithm::rooted_pagerank: {
      if (!spec.source) throw ConfigError("rooted_pagerank: a source vertex is required");
      auto k = additive<S>("rooted_pagerank");
      const S damping = Scalar<S>::from(spec.rooted_damping);
      k.g = [damping](const EdgeRef& e, const S& x) {
        return S(damping * Scalar<S>::from(e.weight) * x);
      };
      constant_init(k, indicator<S>(*spec.source));
      return k;
    }
    case Algorithm::jacobi: {
      if (!spec.system) throw ConfigError("jacobi: a linear system is required");
      const LinearSystem& sys = *spec.system;
      auto scaled = std::make_shared<std::vector<S>>(sys.n, S(0));
      std::vector<double> diag(sys.n + 1, 0.0);
      for (const auto& e : sys.entries) {
        if (e.row == e.col) diag[e.row] = e.value;
      }
      for (std::size_t j = 1; j <= sys.n; ++j) {
        (*scaled)[j - 1] = Scalar<S>::from(sys.b[j - 1]) / Scalar<S>::from(diag[j]);
      }
      auto k = additive<S>("jacobi");
      k.direction = Direction::none;
      k.g = [](const EdgeRef& e, const S& x) { return S(Scalar<S>::from(e.weight) * x); };
      constant_init(k, [scaled](const VertexRef& v) { return (*scaled)[v.index]; });
      return k;
    }
    case Algorithm::simrank: {
      const std::size_t n = isqrt(graph.vertex_count());
      if (n * n != graph.vertex_count()) throw ConfigError("simrank: not a node-pair graph");
      auto k = additive<S>("simrank");
      const S c = Scalar<S>::from(spec.simrank_c);
      // Messages into a diagonal pair are dropped so s(a, a) stays 1.
      auto in_degree = std::make_shared<std::vector<std::size_t>>(graph.vertex_count());
      for (std::size_t i = 0; i < graph.vertex_count(); ++i) (*in_degree)[i] = graph.in_degree_at(i);
      k.g = [c, n, in_degree](const EdgeRef& e, const S& x) {
        if (is_diagonal_pair(e.target, n)) return S(0);
        return S(c * x / count<S>((*in_degree)[e.target_index]));
      };
      constant_init(k, [n](const VertexRef& v) { return is_diagonal_pair(v.vid, n) ? S(1) : S(0); });
      return k;
    }
    case Algorithm::sssp:
      if constexpr (std::is_same_v<S, double>) {
        if (!spec.source) throw ConfigError("sssp: a source vertex is required");
        return sssp_kernel(*spec.source);
      } else {
        throw ConfigError("sssp runs on real values only");
      }
    case Algorithm::connected_components:
      if constexpr (std::is_same_v<S, double>) {
        return cc_kernel();
      } else {
        throw ConfigError("connected_components runs on real values only");
      }
    case Algorithm::adsorption:
      throw ConfigError("adsorption carries label vectors; use build_adsorption_kernel");
  }
  throw ConfigError("unknown algorithm");
}

template <class S>
Kernel<LabelVector<S>> build_adsorption_kernel(const AlgorithmSpec& spec, const Graph&) {
  using V = LabelVector<S>;
  const std::size_t labels = spec.labels;
  const S p_cont = Scalar<S>::from(spec.p_cont);
  const S p_inj = Scalar<S>::from(spec.p_inj);

  Kernel<V> k;
  k.name = "adsorption";
  k.zero = V(labels, S(0));
  k.accumulate = [](const V& a, const V& b) {
    V out(a);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
  };
  k.g = [p_cont](const EdgeRef& e, const V& x) {
    const S scale = p_cont * Scalar<S>::from(e.weight);
    V out(x);
    for (auto& component : out) component *= scale;
    return out;
  };
  auto injection = [labels, p_inj](const VertexRef& v) {
    V out(labels, S(0));
    out[v.vid % labels] = p_inj;
    return out;
  };
  k.constant = injection;
  k.init = [labels, injection](const VertexRef& v) {
    return InitialState<V>{V(labels, S(0)), injection(v)};
  };
  k.progress_of = [](const V& x) {
    double total = 0.0;
    for (const auto& component : x) total += as_real(component);
    return total;
  };
  k.sample_value = [labels](Rng& rng) {
    V out(labels);
    for (auto& component : out) component = Scalar<S>::sample(rng);
    return out;
  };
  k.direction = Direction::increasing;
  k.idempotent = false;
  return k;
}

template <class S>
Kernel<S> counting_kernel() {
  auto k = additive<S>("counting");
  k.g = [](const EdgeRef&, const S& x) { return x; };
  constant_init(k, [](const VertexRef&) { return S(1); });
  return k;
}

template Kernel<double> build_scalar_kernel<double>(const AlgorithmSpec&, const Graph&);
template Kernel<Rational> build_scalar_kernel<Rational>(const AlgorithmSpec&, const Graph&);
template Kernel<LabelVector<double>> build_adsorption_kernel<double>(const AlgorithmSpec&,
                                                                     const Graph&);
template Kernel<LabelVector<Rational>> build_adsorption_kernel<Rational>(const AlgorithmSpec&,
                                                                         const Graph&);
template Kernel<double> counting_kernel<double>();
template Kernel<Rational> counting_kernel<Rational>();

AnyKernel build_kernel(const AlgorithmSpec& spec, const Graph& computation) {
  if (spec.algorithm == Algorithm::adsorption) return build_adsorption_kernel<double>(spec, computation);
  return build_scalar_kernel<double>(spec, computation);
}

std::string describe(const AlgorithmSpec& spec) {
  std::ostringstream out;
  out << to_string(spec.algorithm);
  switch (spec.algorithm) {
    case Algorithm::pagerank: out << " d=" << format_real(spec.damping); break;
    case Algorithm::hits_authority:
      out << " d=" << (spec.hits_damping ? format_real(*spec.hits_damping) : std::string("auto"));
      break;
    case Algorithm::katz: out << " beta=" << format_real(spec.beta); break;
    case Algorithm::simrank: out << " C=" << format_real(spec.simrank_c); break;
    case Algorithm::rooted_pagerank: out << " damping=" << format_real(spec.rooted_damping); break;
    case Algorithm::adsorption:
      out << " labels=" << spec.labels << " p_cont=" << format_real(spec.p_cont)
          << " p_inj=" << format_real(spec.p_inj);
      break;
    default: break;
  }
  if (spec.source) out << " source=" << *spec.source;
  return out.str();
}

}  // namespace daic
