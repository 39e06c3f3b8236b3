// snakeflip: command-line front end for the header library.
//
// Exit codes: 0 ok, 1 usage or parse error, 2 verification failure,
// 3 budget exhausted (partial output is still written and flagged).

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include <snakeflip/io.hpp>

using namespace snakeflip;

namespace {

constexpr int kExitOk = 0, kExitUsage = 1, kExitVerify = 2, kExitBudget = 3;

struct RunConfig {
  std::string word;
  std::string output;
  std::string format;
  int threads = 1;
  std::size_t budget_nodes = 1'000'000;
  int budget_depth = 1 << 30;
  double budget_seconds = 0;
  bool timings = false;

  // command specific
  std::string which = "p";
  std::string method = "recursive";
  int sweep = -1;
  bool brute = false;
  std::string twist;
  std::string node;
  bool include_nodes = false;
  bool square = false;
  std::string id = "all";
  int n = -1;
  bool exhaustive = false;
  int max_len = 5;
};

class Emitter {
 public:
  explicit Emitter(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw PreconditionError("cannot open output file " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void json(const Json& j) { out() << j.dump(2) << "\n"; }

 private:
  std::ofstream file_;
};

int default_threads() {
  if (const char* e = std::getenv("SNAKEFLIP_THREADS")) {
    int v = std::atoi(e);
    if (v > 0) return v;
  }
  unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : static_cast<int>(std::min(h, 8u));
}

Budget budget_of(const RunConfig& c) {
  Budget b;
  b.max_nodes = c.budget_nodes;
  b.max_depth = c.budget_depth;
  b.seconds = c.budget_seconds;
  return b;
}

const std::string& need_word(const RunConfig& c) {
  if (c.word.empty()) throw CLI::ValidationError("--word", "this command needs --word (use eps for the empty word)");
  return c.word;
}

std::string format_or(const RunConfig& c, const std::string& fallback) {
  return c.format.empty() ? fallback : c.format;
}

void require_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (f == a) return;
  throw CLI::ValidationError("--format", "format " + f + " is not available for this command");
}

// "1,3" -> {tau_1, tau_3}; empty or "0" is the identity.
Mask parse_twist(const std::string& s, int t) {
  Mask m = 0;
  if (s.empty() || s == "0") return m;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    int i = 0;
    try {
      i = std::stoi(item);
    } catch (const std::exception&) {
      throw ParseError("bad twist entry '" + item + "'", 0);
    }
    if (i < 1 || i > t) throw PreconditionError("twist index " + item + " outside 1.." + std::to_string(t));
    m |= bit(i - 1);
  }
  return m;
}

std::string mask_list(Mask m) {
  std::string s;
  for (int i : bits_of(m)) s += (s.empty() ? "" : ",") + std::to_string(i + 1);
  return s;
}

Json header(const std::string& command, const SnakeWord& w) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["word"] = w.str();
  return j;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_poset(const RunConfig& c, Emitter& em) {
  SnakeWord w = parse_word(need_word(c));
  require_format(format_or(c, "json"), {"json"});
  Json j = header("poset", w);
  j["which"] = c.which;
  if (c.which == "p") {
    j["poset"] = poset_json(build_snake_poset(w));
  } else if (c.which == "hat") {
    j["poset"] = poset_json(snake_lattice(w));
  } else if (c.which == "q") {
    SnakeContext ctx = make_context(w);
    j["poset"] = poset_json(ctx.q);
    j["filters"] = columns_json(ctx.cfg);
  } else {
    throw CLI::ValidationError("--which", "expected p, hat or q");
  }
  em.json(j);
  return kExitOk;
}

BigInt volume_by(const SnakeWord& w, const std::string& method) {
  if (method == "recursive") return volume_recursive(w);
  if (method == "brute") return volume_brute(w);
  if (method == "skew") return volume_skew(w);
  throw CLI::ValidationError("--method", "expected recursive, brute or skew");
}

int cmd_volume(const RunConfig& c, Emitter& em) {
  if (c.sweep >= 0) {
    if (c.sweep > 16) throw PreconditionError("sweep length above 16");
    require_format(format_or(c, "json"), {"json", "text"});
    Json rows = Json::array();
    for (int n = 0; n <= c.sweep; ++n)
      for (auto& w : all_words(n)) rows.push_back({{"word", w.str()}, {"volume", volume_by(w, c.method).get_str()}});
    if (format_or(c, "json") == "text") {
      for (auto& r : rows) em.out() << r["word"].get<std::string>() << "\t" << r["volume"].get<std::string>() << "\n";
    } else {
      Json j;
      j["schema_version"] = kSchemaVersion;
      j["command"] = "volume";
      j["method"] = c.method;
      j["rows"] = rows;
      em.json(j);
    }
    return kExitOk;
  }
  SnakeWord w = parse_word(need_word(c));
  std::string f = format_or(c, "text");
  require_format(f, {"json", "text"});
  BigInt v = volume_by(w, c.method);
  if (f == "text") {
    em.out() << v << "\n";
  } else {
    Json j = header("volume", w);
    j["method"] = c.method;
    j["volume"] = v.get_str();
    em.json(j);
  }
  return kExitOk;
}

int cmd_circuits(const RunConfig& c, Emitter& em) {
  SnakeWord w = parse_word(need_word(c));
  std::string f = format_or(c, "json");
  require_format(f, {"json", "text"});
  SnakeContext ctx = make_context(w);
  auto zs = c.brute ? circuits_brute(ctx.cfg) : sorted_circuits(all_circuits(ctx));
  if (f == "text") {
    em.out() << zs.size() << " circuits\n";
    for (auto& z : zs) em.out() << circuit_json(ctx.cfg, z).dump() << "\n";
    return kExitOk;
  }
  Json j = header("circuits", w);
  j["source"] = c.brute ? "brute" : "subgraphs";
  j["count"] = zs.size();
  Json a = Json::array();
  for (auto& z : zs) a.push_back(circuit_json(ctx.cfg, z));
  j["circuits"] = a;
  em.json(j);
  return kExitOk;
}

int cmd_triangulate(const RunConfig& c, Emitter& em) {
  SnakeWord w = parse_word(need_word(c));
  std::string f = format_or(c, "json");
  require_format(f, {"json", "text", "dot"});
  SnakeContext ctx = make_context(w);
  TwistSetup s = make_twist_setup(ctx);
  Mask m = parse_twist(c.twist, s.t());
  Triangulation t = twist_simplices(twist_of_mask(s, m), canonical_triangulation(ctx.cfg));
  if (f == "dot") {
    em.out() << dual_graph_dot(dual_graph(t));
    return kExitOk;
  }
  if (f == "text") {
    em.out() << t.size() << " simplices, hash " << triangulation_hash(t).hex() << "\n";
    for (Simplex x : t.simplices) em.out() << labels_json(ctx.cfg, x).dump() << "\n";
    return kExitOk;
  }
  Json j = header("triangulate", w);
  j["twist"] = mask_list(m);
  j["hash"] = triangulation_hash(t).hex();
  j["triangulation"] = triangulation_json(ctx.cfg, t);
  em.json(j);
  return kExitOk;
}

int cmd_flipgraph(const RunConfig& c, Emitter& em) {
  SnakeWord w = parse_word(need_word(c));
  std::string f = format_or(c, "json");
  require_format(f, {"json", "text", "dot"});
  SnakeContext ctx = make_context(w);
  auto circuits = all_circuits(ctx);
  ExploreOptions opt;
  opt.budget = budget_of(c);
  opt.threads = c.threads;
  FlipGraph g = explore_flip_graph(ctx.cfg, canonical_triangulation(ctx.cfg), circuits, opt);
  if (f == "dot") {
    em.out() << flipgraph_dot(g);
  } else if (f == "text") {
    auto hist = g.graph().degree_histogram();
    em.out() << "nodes " << g.size() << "\nedges " << g.edges.size() << "\ndegrees";
    for (std::size_t d = 0; d < hist.size(); ++d)
      if (hist[d]) em.out() << " " << d << ":" << hist[d];
    em.out() << "\n" << (g.partial ? "partial: " + g.stop_reason : std::string("complete")) << "\n";
  } else {
    em.json(flipgraph_json(w.str(), ctx.cfg, g, c.include_nodes));
  }
  if (g.partial) std::cerr << "budget exhausted: " << g.stop_reason << "\n";
  return g.partial ? kExitBudget : kExitOk;
}

int cmd_twist(const RunConfig& c, Emitter& em) {
  SnakeWord w = parse_word(need_word(c));
  require_format(format_or(c, "json"), {"json"});
  SnakeContext ctx = make_context(w);
  TwistSetup s = make_twist_setup(ctx);
  auto circuits = all_circuits(ctx);
  Mask m = parse_twist(c.twist, s.t());
  Twist tau = twist_of_mask(s, m);
  auto group = check_twist_group(s, circuits);
  Json j = header("twist", w);
  j["ladders"] = s.t();
  j["box_counts"] = s.dec.box_counts();
  j["twist"] = mask_list(m);
  Json perm;
  for (int e = 0; e < ctx.lattice.size; ++e)
    perm[ctx.lattice.labels[static_cast<std::size_t>(e)]] = ctx.lattice.labels[static_cast<std::size_t>(tau.perm[static_cast<std::size_t>(e)])];
  j["element_map"] = perm;
  Json g;
  g["order"] = group.order;
  g["distinct"] = group.distinct;
  g["involutive"] = group.involutive;
  g["commuting"] = group.commuting;
  g["circuits_permuted"] = group.circuits_permuted;
  j["group"] = g;
  BigInt vol = order_polytope_volume(ctx.cfg);
  auto img = twist_triangulation(tau, canonical_triangulation(ctx.cfg), ctx.cfg, vol, circuits);
  j["canonical_image"] = {{"hash", triangulation_hash(img.triangulation).hex()}, {"valid", img.valid}};
  bool ok = group.ok && img.valid;
  bool partial = false;
  if (c.square) {
    auto sq = commuting_square_check(ctx, c.budget_depth, c.threads);
    j["commuting_square"] = {{"nodes", sq.nodes},
                             {"checks", sq.checks},
                             {"failures", sq.failures},
                             {"images_in_component", sq.images_in_component},
                             {"images_total", sq.images_total},
                             {"partial", sq.partial}};
    ok = ok && sq.ok;
    partial = sq.partial;
  }
  j["ok"] = ok;
  em.json(j);
  if (!ok) return kExitVerify;
  return partial ? kExitBudget : kExitOk;
}

int cmd_regularity(const RunConfig& c, Emitter& em) {
  SnakeWord w = parse_word(need_word(c));
  require_format(format_or(c, "json"), {"json"});
  auto t0 = std::chrono::steady_clock::now();
  SnakeContext ctx = make_context(w);
  TwistSetup s = make_twist_setup(ctx);
  auto circuits = all_circuits(ctx);
  Json j = header("regularity", w);
  Triangulation t = canonical_triangulation(ctx.cfg);
  bool verified = true;
  if (!c.node.empty()) {
    if (!c.twist.empty()) throw CLI::ValidationError("--node", "--node and --twist are exclusive");
    ExploreOptions opt;
    opt.budget = budget_of(c);
    opt.threads = c.threads;
    FlipGraph g = explore_flip_graph(ctx.cfg, t, circuits, opt);
    std::string want = c.node[0] == 't' ? c.node.substr(1) : c.node;
    int hit = -1;
    for (std::size_t v = 0; v < g.size(); ++v) {
      std::string h = triangulation_hash(g.nodes[v]).hex();
      if (h.compare(0, want.size(), want) == 0) {
        if (hit >= 0) throw PreconditionError("node prefix " + c.node + " is ambiguous");
        hit = static_cast<int>(v);
      }
    }
    if (hit < 0) {
      if (g.partial) {
        std::cerr << "node not found within budget\n";
        return kExitBudget;
      }
      throw PreconditionError("no node with hash prefix " + c.node);
    }
    t = g.nodes[static_cast<std::size_t>(hit)];
    j["node"] = g.name(hit);
  } else {
    Mask m = parse_twist(c.twist, s.t());
    Twist tau = twist_of_mask(s, m);
    t = twist_simplices(tau, t);
    j["twist"] = mask_list(m);
    auto rep = verify_local_folding(ctx.cfg, t, height_function(s, tau));
    Json folding;
    folding["walls"] = rep.checks.size();
    folding["ok"] = rep.ok;
    if (!rep.checks.empty()) {
      folding["first_psi"] = {rep.checks.front().psi1.get_str(), rep.checks.front().psi2.get_str()};
    }
    j["folding"] = folding;
    verified = rep.ok;
  }
  j["hash"] = triangulation_hash(t).hex();
  RegularityResult r = is_regular(ctx.cfg, t, &circuits);
  j["lp"] = regularity_json(ctx.cfg, r);
  // Twisted canonical triangulations are regular by theorem; explored nodes are only reported.
  if (c.node.empty()) verified = verified && r.regular;
  j["ok"] = verified;
  if (c.timings) j["timings_ms"] = {{"total", ms_since(t0)}};
  em.json(j);
  return verified ? kExitOk : kExitVerify;
}

int cmd_conjectures(const RunConfig& c, Emitter& em) {
  std::string f = format_or(c, "json");
  require_format(f, {"json", "text"});
  ConjectureOptions o;
  o.budget = budget_of(c);
  o.threads = c.threads;
  std::vector<ConjectureReport> reports;
  std::vector<double> times;
  auto run = [&](auto fn) {
    auto t0 = std::chrono::steady_clock::now();
    reports.push_back(fn());
    times.push_back(ms_since(t0));
  };
  const bool all = c.id == "all";
  if (!all && c.id != "6.1" && c.id != "6.2" && c.id != "6.3" && c.id != "6.4")
    throw CLI::ValidationError("--id", "expected 6.1, 6.2, 6.3, 6.4 or all");
  std::vector<SnakeWord> words;
  if (!c.word.empty()) {
    words.push_back(parse_word(c.word));
  } else {
    for (const char* s : {"LL", "LR", "LLR", "LRRL", "LLRR"}) words.push_back(SnakeWord(s));
  }
  if (all || c.id == "6.1")
    for (auto& w : words) run([&] { return conjecture_k_regular(w, o); });
  if (all || c.id == "6.2")
    for (auto& w : words) run([&] { return conjecture_dual_graph(w, o); });
  if (all || c.id == "6.3") {
    std::vector<int> ns = c.n >= 0 ? std::vector<int>{c.n} : std::vector<int>{3, 4};
    for (int n : ns) run([&] { return conjecture_dual_count(n, o); });
  }
  if (all || c.id == "6.4") {
    std::vector<int> ns = c.n >= 0 ? std::vector<int>{c.n} : std::vector<int>{1, 2};
    for (int n : ns) run([&] { return conjecture_regular_count(n, o, c.exhaustive && n <= 2); });
  }
  bool partial = false;
  for (auto& r : reports) partial = partial || r.partial;
  if (f == "text") {
    for (auto& r : reports) em.out() << format_report(r);
  } else {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "conjectures";
    Json a = Json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
      Json x = conjecture_json(reports[i]);
      if (c.timings) x["timing_ms"] = times[i];
      a.push_back(x);
    }
    j["reports"] = a;
    em.json(j);
  }
  return partial ? kExitBudget : kExitOk;
}

int cmd_verify_all(const RunConfig& c, Emitter& em) {
  std::string f = format_or(c, "text");
  require_format(f, {"json", "text"});
  VerifySummary s = verify_all(c.max_len, c.threads);
  if (f == "text")
    em.out() << s.text();
  else
    em.json(verify_json(s));
  return s.ok() ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized snake posets, order polytopes and their flip graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file; command-line flags override it");
  RunConfig c;
  c.threads = default_threads();
  app.add_option("--word", c.word, "snake word over {L,R}, eps for the empty word");
  app.add_option("-o,--output", c.output, "output file (default standard output)");
  app.add_option("--format", c.format, "json, dot or text")->check(CLI::IsMember({"json", "dot", "text"}));
  app.add_option("--threads", c.threads, "worker threads")->envname("SNAKEFLIP_THREADS")->check(CLI::PositiveNumber);
  app.add_option("--budget-nodes", c.budget_nodes, "node cap for flip exploration")->check(CLI::PositiveNumber);
  app.add_option("--budget-depth", c.budget_depth, "depth cap for flip exploration")->check(CLI::PositiveNumber);
  app.add_option("--budget-seconds", c.budget_seconds, "time cap, checked between BFS levels")->check(CLI::NonNegativeNumber);
  app.add_flag("--timings", c.timings, "add wall-clock timings to reports");

  auto* poset = app.add_subcommand("poset", "P(w), its bounded lattice or Q_w as JSON");
  poset->add_option("--which", c.which, "p, hat or q")->check(CLI::IsMember({"p", "hat", "q"}));

  auto* volume = app.add_subcommand("volume", "normalized volume of O(P(w))");
  volume->add_option("--method", c.method, "recursive, brute or skew")->check(CLI::IsMember({"recursive", "brute", "skew"}));
  volume->add_option("--sweep", c.sweep, "table over all words up to this length");

  auto* circuits = app.add_subcommand("circuits", "circuits of the vertex set of O(Q_w)");
  circuits->add_flag("--brute", c.brute, "use the brute-force oracle");

  auto* tri = app.add_subcommand("triangulate", "canonical triangulation, optionally twisted");
  tri->add_option("--twist", c.twist, "ladder list, e.g. 1,3");

  auto* flipgraph = app.add_subcommand("flipgraph", "flip graph component of the canonical triangulation");
  flipgraph->add_flag("--include-nodes", c.include_nodes, "attach each node's simplices to the JSON");

  auto* twist = app.add_subcommand("twist", "twist group laws and the image of canonical");
  twist->add_option("--twist", c.twist, "ladder list, e.g. 1,3");
  twist->add_flag("--square", c.square, "run the twist/flip commuting square over the component");

  auto* reg = app.add_subcommand("regularity", "regularity certificate for a triangulation");
  reg->add_option("--twist", c.twist, "twisted canonical triangulation, checked with its height function");
  reg->add_option("--node", c.node, "flip graph node by hash prefix");

  auto* conj = app.add_subcommand("conjectures", "experiments for the open conjectures");
  conj->add_option("--id", c.id, "6.1, 6.2, 6.3, 6.4 or all");
  conj->add_option("--n", c.n, "size parameter for 6.3 and 6.4")->check(CLI::NonNegativeNumber);
  conj->add_flag("--exhaustive", c.exhaustive, "6.4: also enumerate all triangulations (n <= 2)");

  auto* verify = app.add_subcommand("verify-all", "run every theorem check");
  verify->add_option("--max-len", c.max_len, "largest word length")->check(CLI::Range(0, 8));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Emitter em(c.output);
    if (*poset) return cmd_poset(c, em);
    if (*volume) return cmd_volume(c, em);
    if (*circuits) return cmd_circuits(c, em);
    if (*tri) return cmd_triangulate(c, em);
    if (*flipgraph) return cmd_flipgraph(c, em);
    if (*twist) return cmd_twist(c, em);
    if (*reg) return cmd_regularity(c, em);
    if (*conj) return cmd_conjectures(c, em);
    if (*verify) return cmd_verify_all(c, em);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const UnimodularityError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kExitVerify;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
