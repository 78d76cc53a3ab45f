// Command-line front end: instance generation, algorithm runs over token
// streams, adversary campaigns, and coloring verification.
//
// Exit codes: 0 all verifications passed; 2 input/usage error;
// 3 verification failure; 4 internal invariant (theory) violation;
// 5 palette overflow; 6 query fail.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "streamcolor/determ.hpp"
#include "streamcolor/game.hpp"
#include "streamcolor/generate.hpp"
#include "streamcolor/listcolor.hpp"
#include "streamcolor/lowrand.hpp"
#include "streamcolor/metrics.hpp"
#include "streamcolor/robust.hpp"
#include "streamcolor/stream.hpp"

namespace sc = streamcolor;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw sc::InputError("cannot write " + path);
  out << content;
}

// Accepts both the token format ("E u v" / "L x k ..." / "Q") and the plain
// edge-list format ("u v" per line), detected from the first record.
std::vector<sc::StreamToken> load_stream_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw sc::InputError("cannot open " + path);
  std::string first;
  std::streampos pos = in.tellg();
  while (std::getline(in, first)) {
    if (!first.empty() && first[0] != '#') break;
    pos = in.tellg();
  }
  in.clear();
  in.seekg(0);
  const bool token_format =
      !first.empty() && (first[0] == 'E' || first[0] == 'L' || first[0] == 'Q');
  if (token_format) return sc::read_token_file(in);
  const auto edges = sc::read_edge_list(in);
  std::vector<sc::StreamToken> tokens;
  tokens.reserve(edges.size());
  for (const sc::Edge& e : edges) tokens.push_back(sc::StreamToken::edge_token(e.u, e.v));
  return tokens;
}

void emit_metrics(const sc::RunMetrics& metrics, const std::string& flat_path,
                  const std::string& json_path, bool with_time) {
  if (!flat_path.empty()) {
    std::ostringstream ss;
    metrics.write_flat(ss, with_time);
    write_file(flat_path, ss.str());
  }
  if (!json_path.empty()) {
    std::ostringstream ss;
    metrics.write_json(ss, with_time);
    write_file(json_path, ss.str());
  }
}

// ---- gen ----

int cmd_gen(const std::string& kind, std::uint32_t n, std::uint32_t delta, std::uint64_t seed,
            const std::string& out, bool lists, std::uint64_t universe, std::uint64_t q,
            double avg_degree) {
  std::vector<sc::StreamToken> tokens;
  if (kind == "clique") {
    const auto edges = sc::gen_clique(n);
    tokens = sc::make_token_stream(edges, nullptr, seed);
  } else if (kind == "path") {
    const auto edges = sc::gen_path(n);
    for (const sc::Edge& e : edges) tokens.push_back(sc::StreamToken::edge_token(e.u, e.v));
  } else if (kind == "gnp-capped" || kind == "regular-ish") {
    if (delta == 0) throw sc::UsageError("--delta required for " + kind);
    const auto edges = kind == "gnp-capped" ? sc::gen_gnp_capped(n, delta, seed, avg_degree)
                                            : sc::gen_regularish(n, delta, seed);
    if (lists) {
      if (universe == 0) universe = std::min<std::uint64_t>(4096, std::uint64_t{n} * n);
      const auto ls = sc::gen_lists(edges, n, universe, sc::mix64(seed, 0x115));
      tokens = sc::make_token_stream(edges, &ls, seed);
    } else {
      tokens = sc::make_token_stream(edges, nullptr, seed);
    }
  } else if (kind == "adversary-replay") {
    if (delta == 0) throw sc::UsageError("--delta required for adversary-replay");
    tokens = sc::gen_adversary_replay(n, delta, q, seed);
  } else {
    throw sc::UsageError("unknown kind: " + kind);
  }
  std::ostringstream ss;
  sc::write_token_file(ss, tokens);
  write_file(out, ss.str());
  std::cout << "wrote " << tokens.size() << " tokens to " << out << "\n";
  return 0;
}

// ---- run ----

std::vector<sc::Edge> edges_of(const std::vector<sc::StreamToken>& tokens) {
  std::vector<sc::Edge> edges;
  for (const auto& t : tokens)
    if (t.kind == sc::StreamToken::Kind::edge) edges.push_back(sc::Edge{t.u, t.v});
  return edges;
}

int run_multipass(const std::string& algo, const std::string& stream_path, std::uint32_t n,
                  std::optional<std::uint32_t> delta, const std::string& out_path,
                  const std::string& metrics_path, const std::string& json_path, bool with_time) {
  Timer timer;
  const auto tokens = load_stream_file(stream_path);
  sc::MultiPassSource source{std::vector<sc::StreamToken>(tokens)};
  sc::SpaceMeter meter;
  sc::RunMetrics metrics;
  metrics.set("algorithm", algo);
  metrics.set("n", std::uint64_t{n});
  metrics.set("beta", 0.0);
  metrics.set("seed", std::uint64_t{0});

  sc::PartialColoring coloring(n);
  std::uint64_t violations = 0;
  const std::vector<sc::Edge> edges = edges_of(tokens);

  if (algo == "determ") {
    sc::DetermOptions opt;
    opt.n = n;
    opt.delta = delta;
    const sc::DetermResult res = sc::DetermColoring::run(source, opt, &meter);
    coloring = res.coloring;
    metrics.set("delta", std::uint64_t{res.delta});
    metrics.set("delta_discovered", std::uint64_t{res.delta_discovered ? 1u : 0u});
    metrics.set("passes", res.passes);
    metrics.set("pass_formula", sc::determ_pass_formula(res.epochs));
    metrics.set("epochs", std::uint64_t{res.epochs.size()});
    metrics.set("prime", res.prime);
    metrics.set("colors_reserved", std::uint64_t{res.delta} + 1);
    metrics.set("max_counter_entries", res.max_counter_entries);
    for (const sc::EpochSummary& e : res.epochs) {
      const std::string base = "epoch." + std::to_string(e.epoch);
      metrics.set(base + ".u_before", e.u_before);
      metrics.set(base + ".u_after", e.u_after);
      metrics.set(base + ".f_size", e.f_size);
      metrics.set(base + ".k", std::uint64_t{e.k});
      metrics.set(base + ".stages", std::uint64_t{e.stages});
    }
    violations = sc::check_proper(edges, coloring).size();
    if (coloring.distinct_colors() > std::uint64_t{res.delta} + 1) ++violations;
  } else if (algo == "listcolor") {
    sc::ListColorOptions opt;
    opt.n = n;
    opt.delta = delta;
    const sc::ListColorResult res = sc::ListColoring::run(source, opt, &meter);
    coloring = res.coloring;
    metrics.set("delta", std::uint64_t{res.delta});
    metrics.set("passes", res.passes);
    metrics.set("epochs", std::uint64_t{res.epochs.size()});
    metrics.set("universe", res.universe);
    metrics.set("partition_prime", res.partition_prime);
    violations = sc::check_proper(edges, coloring).size();
    // List membership is part of the output contract.
    std::vector<bool> in_list(n, false);
    for (const auto& t : tokens)
      if (t.kind == sc::StreamToken::Kind::list)
        for (sc::ColorId c : t.list)
          if (coloring.chi[t.u] == c) in_list[t.u] = true;
    for (sc::VertexId v = 0; v < n; ++v)
      if (!in_list[v]) ++violations;
  } else {
    throw sc::UsageError("unknown multipass algorithm: " + algo);
  }

  metrics.set("colors_used", coloring.distinct_colors());
  metrics.set("violations", violations);
  metrics.set("query_fails", std::uint64_t{0});
  metrics.set("peak_space_words", static_cast<std::uint64_t>(meter.peak_words()));
  metrics.set("peak_space_bits", static_cast<std::uint64_t>(meter.peak_bits(n)));
  metrics.set_wall_time_ms(timer.ms());

  if (!out_path.empty()) {
    std::ostringstream ss;
    for (sc::VertexId v = 0; v < n; ++v) ss << v << ' ' << coloring.chi[v] << '\n';
    write_file(out_path, ss.str());
  }
  emit_metrics(metrics, metrics_path, json_path, with_time);
  return violations == 0 ? 0 : static_cast<int>(sc::ExitCode::verification_failure);
}

int run_single_pass(const std::string& algo, const std::string& stream_path, std::uint32_t n,
                    std::uint32_t delta, double beta, std::uint64_t seed,
                    const std::string& out_path, const std::string& metrics_path,
                    const std::string& json_path, bool with_time) {
  Timer timer;
  const auto tokens = load_stream_file(stream_path);

  std::unique_ptr<sc::StreamingColorer> colorer;
  if (algo == "robust") {
    colorer = std::make_unique<sc::RobustAdapter>(sc::RobustConfig::make(n, delta, beta, seed));
  } else if (algo == "lowrand") {
    colorer = std::make_unique<sc::LowRandAdapter>(sc::LowRandConfig::make(n, delta, seed));
  } else if (algo == "naive") {
    colorer = std::make_unique<sc::NaiveBaseline>(n, delta, seed);
  } else {
    throw sc::UsageError("unknown single-pass algorithm: " + algo);
  }

  sc::RunMetrics metrics;
  metrics.set("algorithm", algo);
  metrics.set("n", std::uint64_t{n});
  metrics.set("delta", std::uint64_t{delta});
  metrics.set("beta", beta);
  metrics.set("seed", seed);
  metrics.set("colors_reserved", colorer->reserved_palette());

  std::vector<sc::Edge> seen;
  sc::PartialColoring last(n);
  std::uint64_t queries = 0, violations = 0, query_fails = 0, overflow = 0;
  std::uint64_t palette_used = 0;
  bool have_output = false;
  for (const auto& t : tokens) {
    if (t.kind == sc::StreamToken::Kind::list)
      throw sc::InputError("list token in a single-pass edge stream");
    if (t.kind == sc::StreamToken::Kind::edge) {
      const sc::Edge e{t.u, t.v};
      colorer->process(e);
      seen.push_back(e);
      continue;
    }
    // Query.
    ++queries;
    const auto out = colorer->query();
    const std::string key = "query." + std::to_string(queries);
    if (out.query_failed) {
      ++query_fails;
      metrics.set(key, "FAIL");
      continue;
    }
    last.chi = out.colors;
    have_output = true;
    overflow += out.overflow_vertices;
    const auto bad = sc::check_proper(seen, last);
    if (!bad.empty()) ++violations;
    metrics.set(key, bad.empty() ? "ok" : "improper");
    palette_used = std::max(palette_used, last.distinct_colors());
  }

  metrics.set("queries", queries);
  metrics.set("edges", std::uint64_t{seen.size()});
  metrics.set("violations", violations);
  metrics.set("query_fails", query_fails);
  metrics.set("overflow_vertices", overflow);
  metrics.set("colors_used", palette_used);
  metrics.set("stored_edges", colorer->stored_edges());
  metrics.set("peak_space_words", colorer->peak_space_words());
  std::map<std::string, std::int64_t> stats;
  colorer->end_of_game_stats(stats);
  for (const auto& [k, v] : stats) metrics.set("stat." + k, v);
  metrics.set_wall_time_ms(timer.ms());

  if (!out_path.empty() && have_output) {
    std::ostringstream ss;
    for (sc::VertexId v = 0; v < n; ++v) ss << v << ' ' << last.chi[v] << '\n';
    write_file(out_path, ss.str());
  }
  emit_metrics(metrics, metrics_path, json_path, with_time);

  if (violations > 0) return static_cast<int>(sc::ExitCode::verification_failure);
  if (overflow > 0) return static_cast<int>(sc::ExitCode::palette_overflow);
  if (query_fails > 0) return static_cast<int>(sc::ExitCode::query_fail);
  return 0;
}

// ---- game ----

int cmd_game(const std::string& algo, const std::string& adversary, std::uint64_t trials,
             std::uint64_t seed, std::uint32_t n, std::uint32_t delta, double beta,
             std::uint64_t q, const std::string& out_path, const std::string& json_path,
             unsigned threads, bool with_time) {
  Timer timer;
  sc::ColorerFactory make_colorer;
  if (algo == "robust") {
    make_colorer = [=](std::uint64_t s) {
      return std::make_unique<sc::RobustAdapter>(sc::RobustConfig::make(n, delta, beta, s));
    };
  } else if (algo == "lowrand") {
    make_colorer = [=](std::uint64_t s) {
      return std::make_unique<sc::LowRandAdapter>(sc::LowRandConfig::make(n, delta, s));
    };
  } else if (algo == "naive") {
    make_colorer = [=](std::uint64_t s) { return std::make_unique<sc::NaiveBaseline>(n, delta, s); };
  } else {
    throw sc::UsageError("unknown algorithm: " + algo);
  }

  sc::AdversaryFactory make_adversary;
  if (adversary == "oblivious") {
    make_adversary = [=](std::uint64_t s) {
      return std::make_unique<sc::ObliviousRandomAdversary>(s, q);
    };
  } else if (adversary == "conflict-seeker") {
    make_adversary = [=](std::uint64_t s) {
      return std::make_unique<sc::ConflictSeekerAdversary>(s, q);
    };
  } else if (adversary == "stop") {
    make_adversary = [](std::uint64_t) { return std::make_unique<sc::StopAdversary>(); };
  } else {
    throw sc::UsageError("unknown adversary: " + adversary);
  }

  sc::GameRules rules;
  rules.n = n;
  rules.delta = delta;
  const sc::CampaignSummary summary =
      sc::run_campaign(make_colorer, make_adversary, rules, trials, seed, threads);

  sc::RunMetrics metrics;
  metrics.set("algorithm", algo);
  metrics.set("adversary", adversary);
  metrics.set("n", std::uint64_t{n});
  metrics.set("delta", std::uint64_t{delta});
  metrics.set("beta", beta);
  metrics.set("q", q);
  metrics.set("seed", seed);
  metrics.set("trials", trials);
  metrics.set("violations", summary.total_violations);
  metrics.set("query_fails", summary.total_query_fails);
  metrics.set("audit_failures", summary.total_audit_failures);
  metrics.set("overflow_vertices", summary.total_overflow_vertices);
  metrics.set("max_palette_used", summary.max_palette_used);
  metrics.set("max_stored_edges", summary.max_stored_edges);
  metrics.set("max_peak_space", summary.max_peak_space);
  for (std::uint64_t t = 0; t < summary.games.size(); ++t) {
    const sc::GameResult& g = summary.games[t];
    const std::string base = "trial." + std::to_string(t);
    metrics.set(base + ".verdict", g.violations == 0 && g.audit_failures == 0 ? "pass" : "fail");
    metrics.set(base + ".inserts", g.inserts);
    metrics.set(base + ".queries", g.queries);
    metrics.set(base + ".stored_peak", g.stored_edges_peak);
    metrics.set(base + ".palette_used", g.palette_used_max);
    metrics.set(base + ".digest", g.transcript_digest);
  }
  metrics.set_wall_time_ms(timer.ms());
  emit_metrics(metrics, out_path, json_path, with_time);

  std::cout << "trials=" << trials << " violations=" << summary.total_violations
            << " query_fails=" << summary.total_query_fails
            << " audit_failures=" << summary.total_audit_failures
            << " max_stored=" << summary.max_stored_edges << "\n";
  if (summary.total_violations || summary.total_audit_failures)
    return static_cast<int>(sc::ExitCode::verification_failure);
  if (summary.total_query_fails) return static_cast<int>(sc::ExitCode::query_fail);
  return 0;
}

// ---- verify ----

int cmd_verify(const std::string& stream_path, const std::string& coloring_path, std::uint32_t n) {
  const auto tokens = load_stream_file(stream_path);
  std::ifstream cin_(coloring_path);
  if (!cin_) throw sc::InputError("cannot open " + coloring_path);

  sc::PartialColoring coloring(n);
  std::string line;
  while (std::getline(cin_, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::uint64_t v, c;
    if (!(ls >> v >> c)) throw sc::InputError("bad coloring line: " + line);
    if (v >= n) throw sc::InputError("vertex out of range in coloring");
    coloring.chi[static_cast<sc::VertexId>(v)] = static_cast<sc::ColorId>(c);
  }

  const auto edges = edges_of(tokens);
  const auto bad = sc::check_proper(edges, coloring);
  bool lists_ok = true;
  for (const auto& t : tokens) {
    if (t.kind != sc::StreamToken::Kind::list) continue;
    if (!coloring.is_colored(t.u)) continue;
    bool found = false;
    for (sc::ColorId c : t.list) found = found || c == coloring.chi[t.u];
    if (!found) lists_ok = false;
  }
  std::cout << "edges=" << edges.size() << " monochromatic=" << bad.size()
            << " lists_ok=" << (lists_ok ? "yes" : "no") << "\n";
  return (bad.empty() && lists_ok) ? 0 : static_cast<int>(sc::ExitCode::verification_failure);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"streamcolor: streaming graph coloring toolkit"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a token stream");
  std::string gen_kind, gen_out;
  std::uint32_t gen_n = 0, gen_delta = 0;
  std::uint64_t gen_seed = 1, gen_universe = 0, gen_q = 1;
  double gen_avg = 0.0;
  bool gen_lists_flag = false;
  gen->add_option("--kind", gen_kind, "gnp-capped|regular-ish|clique|path|adversary-replay")
      ->required();
  gen->add_option("--n", gen_n, "vertex count")->required();
  gen->add_option("--delta", gen_delta, "max degree cap");
  gen->add_option("--seed", gen_seed, "rng seed");
  gen->add_option("--out", gen_out, "output token file")->required();
  gen->add_flag("--lists", gen_lists_flag, "attach per-vertex color lists (deg+1 each)");
  gen->add_option("--universe", gen_universe, "color universe size for --lists");
  gen->add_option("--q", gen_q, "query cadence for adversary-replay");
  gen->add_option("--avg-degree", gen_avg, "target average degree for gnp-capped");

  // run
  auto* run = app.add_subcommand("run", "run an algorithm over a token stream");
  std::string run_algo, run_stream, run_out, run_metrics, run_json;
  std::uint32_t run_n = 0;
  std::int64_t run_delta = -1;
  double run_beta = 0.0;
  std::uint64_t run_seed = 1;
  bool run_no_time = false, run_lists_flag = false;
  run->add_option("--algo", run_algo, "determ|listcolor|robust|lowrand|naive")->required();
  run->add_option("--stream", run_stream, "token file")->required();
  run->add_option("--n", run_n, "vertex count")->required();
  run->add_option("--delta", run_delta, "max degree (discovered if omitted for determ/listcolor)");
  run->add_option("--beta", run_beta, "space/color tradeoff exponent (robust)");
  run->add_option("--seed", run_seed, "algorithm seed (robust/lowrand/naive)");
  run->add_option("--out", run_out, "coloring output file");
  run->add_option("--metrics", run_metrics, "flat metrics output file");
  run->add_option("--metrics-json", run_json, "JSON metrics output file");
  run->add_flag("--no-wall-time", run_no_time, "omit wall time for byte-stable metrics");
  run->add_flag("--lists", run_lists_flag, "expect list tokens (implied by --algo listcolor)");

  // game
  auto* game = app.add_subcommand("game", "run adversary campaigns");
  std::string game_algo, game_adv, game_out, game_json;
  std::uint64_t game_trials = 1, game_seed = 0, game_q = 1;
  std::uint32_t game_n = 0, game_delta = 0;
  double game_beta = 0.0;
  unsigned game_threads = 0;
  bool game_no_time = false;
  game->add_option("--algo", game_algo, "robust|lowrand|naive")->required();
  game->add_option("--adversary", game_adv, "oblivious|conflict-seeker|stop")->required();
  game->add_option("--trials", game_trials, "number of independent games")->required();
  game->add_option("--seed", game_seed, "campaign master seed")->required();
  game->add_option("--n", game_n, "vertex count")->required();
  game->add_option("--delta", game_delta, "degree cap")->required();
  game->add_option("--beta", game_beta, "tradeoff exponent (robust)");
  game->add_option("--q", game_q, "adversary query cadence");
  game->add_option("--out", game_out, "campaign summary file");
  game->add_option("--metrics-json", game_json, "JSON summary file");
  game->add_option("--threads", game_threads, "worker threads (0 = hardware)");
  game->add_flag("--no-wall-time", game_no_time, "omit wall time for byte-stable metrics");

  // verify
  auto* verify = app.add_subcommand("verify", "check a coloring against a stream");
  std::string ver_stream, ver_coloring;
  std::uint32_t ver_n = 0;
  verify->add_option("--stream", ver_stream, "token file")->required();
  verify->add_option("--coloring", ver_coloring, "coloring file (x c per line)")->required();
  verify->add_option("--n", ver_n, "vertex count")->required();

  try {
    app.parse(argc, argv);
    if (gen->parsed())
      return cmd_gen(gen_kind, gen_n, gen_delta, gen_seed, gen_out, gen_lists_flag, gen_universe,
                     gen_q, gen_avg);
    if (run->parsed()) {
      std::optional<std::uint32_t> delta;
      if (run_delta >= 0) delta = static_cast<std::uint32_t>(run_delta);
      if (run_algo == "determ" || run_algo == "listcolor")
        return run_multipass(run_algo, run_stream, run_n, delta, run_out, run_metrics, run_json,
                             !run_no_time);
      if (!delta) throw sc::UsageError("--delta required for " + run_algo);
      return run_single_pass(run_algo, run_stream, run_n, *delta, run_beta, run_seed, run_out,
                             run_metrics, run_json, !run_no_time);
    }
    if (game->parsed())
      return cmd_game(game_algo, game_adv, game_trials, game_seed, game_n, game_delta, game_beta,
                      game_q, game_out, game_json, game_threads, !game_no_time);
    if (verify->parsed()) return cmd_verify(ver_stream, ver_coloring, ver_n);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(sc::ExitCode::input_error);
  } catch (const sc::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return static_cast<int>(sc::ExitCode::input_error);
  } catch (const sc::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return static_cast<int>(sc::ExitCode::input_error);
  } catch (const sc::PaletteOverflowError& e) {
    std::cerr << "palette overflow: " << e.what() << "\n";
    return static_cast<int>(sc::ExitCode::palette_overflow);
  } catch (const sc::TheoryViolation& e) {
    std::cerr << "theory violation: " << e.what() << "\n";
    return static_cast<int>(sc::ExitCode::theory_violation);
  } catch (const sc::AccountingError& e) {
    std::cerr << "accounting error: " << e.what() << "\n";
    return static_cast<int>(sc::ExitCode::theory_violation);
  }
  return 0;
}
