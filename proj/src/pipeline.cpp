#include "artifact/pipeline.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <optional>
#include <sstream>

#include "artifact/cohomology.hpp"
#include "artifact/homotopy_transfer.hpp"
#include "artifact/matched.hpp"
#include "artifact/pair_io.hpp"
#include "artifact/poly_structures.hpp"
#include "artifact/structural.hpp"
#include "artifact/transition.hpp"

namespace artifact {

using ojson = nlohmann::ordered_json;

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"validate",   "fedosov", "contraction", "transfer-t", "transfer-d",
                                              "matched",    "uniqueness", "cohomology"};
  return names;
}

std::vector<std::string> parse_suites(const std::string& text) {
  std::vector<bool> on(suite_names().size(), false);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item == "none") continue;
    if (item == "all") {
      on.assign(on.size(), true);
      continue;
    }
    auto it = std::find(suite_names().begin(), suite_names().end(), item);
    if (it == suite_names().end()) throw ConfigError("unknown suite '" + item + "'");
    on[it - suite_names().begin()] = true;
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < on.size(); ++i)
    if (on[i]) out.push_back(suite_names()[i]);
  return out;
}

void validate_config(const RunConfig& cfg) {
  if (cfg.arity < 1) throw ConfigError("--arity must be at least 1");
  if (cfg.trunc < cfg.arity + 2)
    throw ConfigError("--trunc " + std::to_string(cfg.trunc) + " is below the transfer budget arity + 2 = " +
                      std::to_string(cfg.arity + 2));
}

std::string to_string(CheckKind k) {
  switch (k) {
    case CheckKind::Validate: return "validate";
    case CheckKind::Fedosov: return "fedosov";
    case CheckKind::Contraction: return "contraction";
    case CheckKind::Perturbed: return "perturbed";
    case CheckKind::Transfer: return "transfer";
    case CheckKind::Matched: return "matched";
    case CheckKind::Uniqueness: return "uniqueness";
    case CheckKind::Cohomology: return "cohomology";
    case CheckKind::Structural: return "structural";
  }
  return "?";
}

namespace {

// Depth bounds of the exhaustive checks.
constexpr int kCohomologyOrder = 2;
constexpr int kCohomologyDegree = 2;
constexpr int kPbwSlack = 8;  // PBW tables reach N + 8: the transition needs the headroom

// Identities sampled at random rather than exhaustively.
bool is_sampled(const std::string& identity) { return identity == "bracket independent of representatives"; }

struct Choice {
  std::string label;
  LiePairSpec spec;
  std::unique_ptr<LiePair> pair;
  Connection conn;
  std::unique_ptr<FedosovData> fd;
  std::unique_ptr<Pbw> pbw;
  std::optional<TContraction> tp;
  std::optional<DContraction> dp;
  std::unique_ptr<TTransfer> tt;
  std::unique_ptr<DTransfer> dt;
};

class Context {
 public:
  Context(const RunConfig& cfg, PairFile file) : cfg_(cfg), file_(std::move(file)) {}

  const PairFile& file() const { return file_; }
  int N() const { return cfg_.trunc; }

  // Choice 0 is the file's own (j, nabla); the others come from its alternatives.
  Choice& choice(std::size_t i) {
    while (choices_.size() <= i) choices_.emplace_back();
    Choice& c = choices_[i];
    if (!c.pair) {
      c.label = i == 0 ? std::string("default") : file_.alternatives.at(i - 1).label;
      c.spec = i == 0 ? file_.spec : with_choice(file_.spec, file_.alternatives.at(i - 1));
      auto vr = validate_pair(c.spec);
      if (!vr.ok()) throw std::runtime_error("choice '" + c.label + "' is not a valid Lie pair");
      c.pair = std::make_unique<LiePair>(*vr.pair);
      c.conn = c.spec.connection ? Connection{*c.spec.connection} : default_connection(*c.pair);
    }
    return c;
  }
  std::size_t num_choices() const { return 1 + file_.alternatives.size(); }

  const FedosovData& fd(Choice& c) {
    if (!c.fd) c.fd = std::make_unique<FedosovData>(solve_fedosov(*c.pair, c.conn, N()));
    return *c.fd;
  }
  const Pbw& pbw(Choice& c) {
    if (!c.pbw) c.pbw = std::make_unique<Pbw>(*c.pair, c.conn, N() + kPbwSlack);
    return *c.pbw;
  }
  const TContraction& tp(Choice& c) {
    if (!c.tp) c.tp = instantiate_tpoly(fd(c));
    return *c.tp;
  }
  const DContraction& dp(Choice& c) {
    if (!c.dp) c.dp = instantiate_dpoly(fd(c), pbw(c));
    return *c.dp;
  }
  TTransfer& tt(Choice& c) {
    if (!c.tt) c.tt = make_t_transfer(fd(c), tp(c));
    return *c.tt;
  }
  DTransfer& dt(Choice& c) {
    if (!c.dt) c.dt = make_d_transfer(fd(c), dp(c));
    return *c.dt;
  }

 private:
  const RunConfig& cfg_;
  PairFile file_;
  std::deque<Choice> choices_;
};

template <class K>
ojson vec_json(const Frame& f, const Vec<K>& v) {
  ojson out = ojson::array();
  for (const auto& [k, c] : v) out.push_back(ojson{{"term", show_key(f, k)}, {"coeff", to_string(c)}});
  return out;
}

void add(StageReport& s, CheckKind kind, const IdentityCheck& c) {
  s.checks.push_back(CheckRecord{kind, c, is_sampled(c.identity)});
}
void add(StageReport& s, CheckKind kind, const std::vector<IdentityCheck>& cs) {
  for (const auto& c : cs) add(s, kind, c);
}

IdentityCheck from_jacobi(const JacobiReport& r) {
  IdentityCheck c("generalized Jacobi, arity " + std::to_string(r.arity));
  c.checked = r.checked;
  c.failures = r.failures;
  c.witness = r.witness;
  return c;
}

// Detected iff at least one of the checks fails.
ControlRecord control_from(const std::string& name, const std::vector<IdentityCheck>& cs) {
  ControlRecord rec(name);
  for (const auto& c : cs)
    if (!c.pass()) {
      rec.detected = true;
      rec.witness = c.identity + ": " + c.witness;
      break;
    }
  return rec;
}

void note(IdentityCheck& c, const std::string& w) {
  if (!c.failures) c.witness = w;
  ++c.failures;
}

std::vector<DSmallKey> admitted(const std::vector<DSmallKey>& basis, int N) {
  std::vector<DSmallKey> out;
  for (const auto& s : basis)
    if (d_required_trunc({s}) <= N) out.push_back(s);
  return out;
}

IdentityCheck q_squared(const FedosovData& fd, const std::string& label) {
  IdentityCheck chk("Q^2 = 0 on words of weight <= N-1" + label);
  const int N = fd.frame.N;
  for (const auto& w : word_basis(fd.frame, N - 1)) {
    ++chk.checked;
    if (!truncate_weight(apply_Q(fd, apply_Q(fd, single(w))), N - 1).empty()) note(chk, word_string(fd.frame, w));
  }
  return chk;
}

// ---------------------------------------------------------------------------------------

void stage_validate(Context& ctx, StageReport& s) {
  const PairFile& file = ctx.file();
  for (std::size_t i = 0; i < ctx.num_choices(); ++i) {
    const LiePairSpec spec = i == 0 ? file.spec : with_choice(file.spec, file.alternatives[i - 1]);
    const std::string label = i == 0 ? "default" : file.alternatives[i - 1].label;
    auto vr = validate_pair(spec);
    IdentityCheck pairChk("Lie pair is well formed (" + label + ")");
    pairChk.checked = 1;
    ojson issues = ojson::array();
    for (const auto& is : vr.issues) {
      std::string w = is.kind + " (";
      for (std::size_t k = 0; k < is.witness.size(); ++k) w += (k ? "," : "") + std::to_string(is.witness[k]);
      w += "): " + is.detail;
      note(pairChk, w);
      issues.push_back(ojson{{"kind", is.kind}, {"witness", is.witness}, {"detail", is.detail}});
    }
    add(s, CheckKind::Validate, pairChk);
    if (!vr.ok()) {
      s.artifacts["issues"] = issues;
      return;
    }
    Choice& c = ctx.choice(i);
    IdentityCheck connChk("connection extends Bott and is torsion-free (" + label + ")");
    connChk.checked = 1;
    for (const auto& is : check_connection(*c.pair, c.conn)) {
      std::string w = is.kind + " (";
      for (std::size_t k = 0; k < is.witness.size(); ++k) w += (k ? "," : "") + std::to_string(is.witness[k]);
      note(connChk, w + "): " + is.detail);
    }
    add(s, CheckKind::Validate, connChk);
  }
  const LiePair& p = *ctx.choice(0).pair;
  s.artifacts["dimL"] = p.n;
  s.artifacts["dimA"] = p.a;
  s.artifacts["rankB"] = p.r;
  s.artifacts["matched"] = p.matched();
  s.artifacts["choices"] = ctx.num_choices();
}

void stage_fedosov(Context& ctx, StageReport& s) {
  Choice& c = ctx.choice(0);
  const FedosovData& fd = ctx.fd(c);
  const Frame& f = fd.frame;
  const int N = f.N;
  IdentityCheck hx("h X = 0");
  hx.checked = 1;
  if (auto v = h_tilde(f, fd.X); !v.empty()) note(hx, show_key(f, v.begin()->first));
  IdentityCheck w2("X has symmetric weight >= 2");
  for (const auto& [k, v] : fd.X) {
    ++w2.checked;
    if (k.w.I.weight() < 2) note(w2, show_key(f, k));
  }
  IdentityCheck mc("Maurer-Cartan defect vanishes to weight N-1");
  mc.checked = 1;
  if (auto v = truncate_weight(maurer_cartan_defect(fd), N - 1); !v.empty()) note(mc, show_key(f, v.begin()->first));
  add(s, CheckKind::Fedosov, {hx, w2, mc, q_squared(fd, "")});

  const Pbw& pb = ctx.pbw(c);
  add(s, CheckKind::Structural, check_flash_bott(pb, f));
  add(s, CheckKind::Structural, check_flash_pd(pb, fd.dframe, 3));
  add(s, CheckKind::Structural, check_flash_fedosov(fd, pb));

  // Control: a connection with torsion. On a rank-one quotient every Bott extension is
  // torsion-free, so the control needs rank B >= 2.
  const LiePair& p = *c.pair;
  ControlRecord tor("torsion-ful connection breaks Q^2 = 0");
  if (p.r < 2) {
    tor.applicable = false;
    tor.note = "rank B = 1: every connection extending Bott is torsion-free";
  } else {
    Tensor3 g = adapted_gamma(p, c.conn);
    g[p.a][1][0] += 1;
    const Connection bad = connection_from_adapted(p, g);
    const auto issues = check_connection(p, bad);
    const bool flagged = std::any_of(issues.begin(), issues.end(), [](const PairIssue& i) { return i.kind == "torsion"; });
    const FedosovData fdBad = solve_fedosov(p, bad, N);
    const IdentityCheck q2 = q_squared(fdBad, " (torsion-ful)");
    tor.detected = flagged && !q2.pass();
    tor.witness = q2.witness;
    tor.note = flagged ? "check_connection reports torsion" : "check_connection missed the torsion";
  }
  s.controls.push_back(tor);

  s.artifacts["iterations"] = fd.iterations;
  s.artifacts["X_terms"] = vec_json(f, fd.X);
  s.artifacts["X_is_zero"] = fd.X.empty();
}

void stage_contraction(Context& ctx, StageReport& s) {
  Choice& c = ctx.choice(0);
  const FedosovData& fd = ctx.fd(c);
  const Pbw& pb = ctx.pbw(c);
  const Frame& f = fd.frame;
  const int N = f.N;
  const LiePair& p = *c.pair;
  auto sh = [&](const auto& k) { return show_key(f, k); };
  auto label = [](std::vector<IdentityCheck> cs, const std::string& side) {
    for (auto& x : cs) x.identity = side + ": " + x.identity;
    return cs;
  };

  const auto tBig = tbig_basis(f, N - 1);
  const auto tSmall = tsmall_basis(f);
  const auto dBig = dbig_basis(f, N - 1, 1, 1);
  const auto dSmall = dsmall_basis(f, 2, 2, 3);

  const TContraction tBase = instantiate_tpoly_base(fd);
  const DContraction dBase = instantiate_dpoly_base(fd, pb);
  add(s, CheckKind::Contraction, label(verify_contraction(tBase, tBig, tSmall, sh), "polyvector"));
  add(s, CheckKind::Contraction, label(verify_contraction(dBase, dBig, dSmall, sh), "polydifferential"));

  IdentityCheck hochschild("polydifferential: unperturbed small differential = (-1)^{p+k} d_H");
  for (const auto& x : dSmall) {
    ++hochschild.checked;
    if (dBase.d(x) != scaled(hochschild_d(x), Scalar(parity_sign(popcount(x.aMask) + arity(x)))))
      note(hochschild, sh(x));
  }
  add(s, CheckKind::Contraction, hochschild);

  add(s, CheckKind::Perturbed, label({check_sigma_rho_h(tBase, tpoly_rho(fd), tBig, sh)}, "polyvector"));
  add(s, CheckKind::Perturbed, label({check_sigma_rho_h(dBase, dpoly_rho(fd), dBig, sh)}, "polydifferential"));
  const TContraction& tp = ctx.tp(c);
  const DContraction& dp = ctx.dp(c);
  add(s, CheckKind::Perturbed, label(verify_contraction(tp, tBig, tSmall, sh), "perturbed polyvector"));
  add(s, CheckKind::Perturbed, label(verify_contraction(dp, dBig, dSmall, sh), "perturbed polydifferential"));
  IdentityCheck bott("transferred polyvector differential = d_A^Bott");
  for (const auto& x : tSmall) {
    ++bott.checked;
    if (tp.d(x) != d_A_bott(p, x)) note(bott, sh(x));
  }
  IdentityCheck dU("transferred polydifferential differential = d_A^U + (-1)^{p+k} d_H");
  for (const auto& x : dSmall) {
    ++dU.checked;
    if (dp.d(x) != dpoly_small_differential(p, pb.env(), x)) note(dU, sh(x));
  }
  add(s, CheckKind::Perturbed, {bott, dU});

  const auto dLow = dbig_basis(f, 2, 1, 1);
  add(s, CheckKind::Structural, check_rho_m(fd, dLow));
  add(s, CheckKind::Structural, check_double_complex(fd, dLow));

  // Control: the homotopy without its 1/(v+|J|) factor.
  s.controls.push_back(control_from("corrupted polyvector homotopy (no 1/(v+|J|))",
                                    verify_contraction(instantiate_tpoly_base(fd, false), tBig, tSmall, sh)));
  s.controls.push_back(control_from("corrupted polydifferential homotopy (no 1/(v+|J|))",
                                    verify_contraction(instantiate_dpoly_base(fd, pb, false), dBig, dSmall, sh)));

  s.artifacts["polyvector_basis"] = ojson{{"big", tBig.size()}, {"small", tSmall.size()}};
  s.artifacts["polydifferential_basis"] = ojson{{"big", dBig.size()}, {"small", dSmall.size()}};
}

template <class KS, class Show>
void transfer_checks(StageReport& s, const LInfinity<KS>& L, const std::vector<KS>& basis, int maxArity,
                     const std::function<bool(const std::vector<KS>&)>& admit, Show&& show) {
  for (int n = 1; n <= maxArity; ++n) add(s, CheckKind::Transfer, from_jacobi(check_jacobi(L, basis, n, admit, show)));
  auto bad = corrupt_l2(L, basis);
  ControlRecord rec("sign-flipped lambda_2");
  if (bad.target.empty()) {
    rec.applicable = false;
    rec.note = "no lambda_2 value feeds a further bracket, so a flip is an L-infinity isomorphism";
  } else {
    rec.note = "flipped on (" + show(bad.target[0]) + " , " + show(bad.target[1]) + ")";
    std::vector<IdentityCheck> cs;
    for (int n = 2; n <= 3; ++n) cs.push_back(from_jacobi(check_jacobi(bad.L, basis, n, admit, show)));
    ControlRecord det = control_from(rec.name, cs);
    rec.detected = det.detected;
    rec.witness = det.witness;
  }
  s.controls.push_back(rec);
}

template <class KS, class T, class Show>
ojson lambda2_table(T& tr, const std::vector<KS>& basis, const std::function<bool(const std::vector<KS>&)>& admit,
                    const Frame& f, Show&& show) {
  ojson out = ojson::array();
  std::vector<KS> sorted = basis;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i; j < sorted.size(); ++j) {
      if (!admit({sorted[i], sorted[j]})) continue;
      auto v = tr.lambda2(sorted[i], sorted[j]);
      if (!v.empty()) out.push_back(ojson{{"x", show(sorted[i])}, {"y", show(sorted[j])}, {"value", vec_json(f, v)}});
    }
  return out;
}

void stage_transfer_t(Context& ctx, StageReport& s, int maxArity) {
  Choice& c = ctx.choice(0);
  const Frame& f = ctx.fd(c).frame;
  auto& tr = ctx.tt(c);
  const auto L = tr.linf();
  const auto basis = tsmall_basis(f);
  auto sh = [&](const TSmallKey& k) { return show_key(f, k); };
  IdentityCheck l1("lambda_1 = d_A^Bott");
  for (const auto& x : basis) {
    ++l1.checked;
    const auto want = d_A_bott(*c.pair, x);
    if (L({x}) != want) note(l1, sh(x));
  }
  add(s, CheckKind::Transfer, l1);
  std::function<bool(const std::vector<TSmallKey>&)> all = [](const std::vector<TSmallKey>&) { return true; };
  transfer_checks(s, L, basis, maxArity, all, sh);
  s.artifacts["basis"] = basis.size();
  s.artifacts["lambda2"] = lambda2_table(tr, basis, all, f, sh);
}

void stage_transfer_d(Context& ctx, StageReport& s, int maxArity) {
  Choice& c = ctx.choice(0);
  const Frame& f = ctx.fd(c).frame;
  const int N = f.N;
  auto& tr = ctx.dt(c);
  const auto L = tr.linf();
  const auto basis = dsmall_basis(f, 1, 1, 1);
  auto sh = [&](const DSmallKey& k) { return show_key(f, k); };
  std::function<bool(const std::vector<DSmallKey>&)> admit = [N](const std::vector<DSmallKey>& t) {
    return d_required_trunc(t) <= N;
  };
  IdentityCheck l1("lambda_1 = d_A^U + (-1)^{p+k} d_H");
  for (const auto& x : admitted(dsmall_basis(f, 2, 2, 3), N)) {
    ++l1.checked;
    const auto want = dpoly_small_differential(*c.pair, ctx.pbw(c).env(), x);
    if (L({x}) != want) note(l1, sh(x));
  }
  add(s, CheckKind::Transfer, l1);
  transfer_checks(s, L, basis, maxArity, admit, sh);
  s.artifacts["basis"] = basis.size();
  s.artifacts["lambda2"] = lambda2_table(tr, basis, admit, f, sh);
}

void stage_matched(Context& ctx, StageReport& s) {
  Choice& c = ctx.choice(0);
  const LiePair& p = *c.pair;
  s.artifacts["matched"] = p.matched();
  if (!p.matched()) {
    s.status = "not-applicable";
    return;
  }
  const FedosovData& fd = ctx.fd(c);
  const Frame& f = fd.frame;
  const int N = f.N;
  const MatchedData md = matched_direct(p);
  auto sh = [&](const auto& k) { return show_key(f, k); };

  auto& tt = ctx.tt(c);
  const auto tb = tsmall_basis(f);
  IdentityCheck tl2("polyvector lambda_2 = direct Schouten table");
  IdentityCheck tl3("polyvector lambda_3 = 0");
  for (const auto& x : tb)
    for (const auto& y : tb) {
      ++tl2.checked;
      if (tt.lambda2(x, y) != direct_schouten(md, x, y)) note(tl2, sh(x) + " , " + sh(y));
    }
  const auto Lt = tt.linf();
  for (std::size_t i = 0; i < tb.size(); ++i)
    for (std::size_t j = i; j < tb.size(); ++j)
      for (std::size_t k = j; k < tb.size(); ++k) {
        ++tl3.checked;
        if (!Lt({tb[i], tb[j], tb[k]}).empty()) note(tl3, sh(tb[i]) + " , " + sh(tb[j]) + " , " + sh(tb[k]));
      }

  auto& dt = ctx.dt(c);
  const Enveloping& env = ctx.pbw(c).env();
  const auto db = dsmall_basis(f, 2, 2, 2);
  IdentityCheck dl2("polydifferential lambda_2 = direct Gerstenhaber table (Koszul signs)");
  long literalBad = 0, literalChecked = 0;
  std::string literalWitness;
  for (const auto& x : db)
    for (const auto& y : db) {
      if (d_required_trunc({x, y}) > N) continue;
      const auto got = dt.lambda2(x, y);
      ++dl2.checked;
      if (got != to_quotient_basis(md, env, direct_gerstenhaber(md, x, y, SignConvention::Koszul)))
        note(dl2, sh(x) + " , " + sh(y));
      ++literalChecked;
      if (got != to_quotient_basis(md, env, direct_gerstenhaber(md, x, y, SignConvention::Literal))) {
        if (!literalBad) literalWitness = sh(x) + " , " + sh(y);
        ++literalBad;
      }
    }
  IdentityCheck dl3("polydifferential lambda_3 = 0");
  const auto Ld = dt.linf();
  const auto d1 = dsmall_basis(f, 1, 1, 1);
  for (std::size_t i = 0; i < d1.size(); ++i)
    for (std::size_t j = i; j < d1.size(); ++j)
      for (std::size_t k = j; k < d1.size(); ++k) {
        if (d_required_trunc({d1[i], d1[j], d1[k]}) > N) continue;
        ++dl3.checked;
        if (!Ld({d1[i], d1[j], d1[k]}).empty()) note(dl3, sh(d1[i]) + " , " + sh(d1[j]) + " , " + sh(d1[k]));
      }
  add(s, CheckKind::Matched, {tl2, tl3, dl2, dl3});
  add(s, CheckKind::Structural, check_tau_morphism(fd, ctx.tp(c), md));

  s.findings.push_back(Finding{
      "literal sign convention",
      "direct table with arity-only signs differs from the transferred lambda_2 on " + std::to_string(literalBad) +
          " of " + std::to_string(literalChecked) + " pairs" +
          (literalBad ? ", first (" + literalWitness + ")" : std::string())});
  s.artifacts["literal_mismatches"] = literalBad;
  s.artifacts["literal_checked"] = literalChecked;
}

void stage_uniqueness(Context& ctx, StageReport& s) {
  if (ctx.num_choices() < 2) {
    s.status = "not-applicable";
    s.findings.push_back({"choices", "the pair file lists no alternative (j, nabla)"});
    return;
  }
  Choice& c1 = ctx.choice(0);
  const FedosovData& fd1 = ctx.fd(c1);
  const Pbw& pb1 = ctx.pbw(c1);
  const Frame& f = fd1.frame;
  const int N = f.N;
  const auto db = admitted(dsmall_basis(f, 2, 2, 3), N);
  const auto tb = tsmall_basis(f);
  Frame big = f;
  big.byExcess = true;
  const auto leadBasis = dbig_basis(f, 2, 1, 2);
  const auto dInter = dbig_basis(f, 2, 1, 1);
  const auto tInter = tbig_basis(f, 2);
  ojson alts = ojson::array();
  for (std::size_t i = 1; i < ctx.num_choices(); ++i) {
    Choice& c2 = ctx.choice(i);
    const FedosovData& fd2 = ctx.fd(c2);
    const Transition tr(pb1, ctx.pbw(c2), pb1.max_weight());
    auto tag = [&](IdentityCheck x) {
      x.identity += " [" + c2.label + "]";
      return x;
    };
    add(s, CheckKind::Uniqueness, tag(check_psi_duality(tr, 3)));
    add(s, CheckKind::Uniqueness, tag(check_linear_part(tr, ctx.dp(c1), ctx.dp(c2), fd2, db)));
    add(s, CheckKind::Uniqueness, tag(check_linear_part(tr, ctx.tp(c1), ctx.tp(c2), fd2, tb)));
    add(s, CheckKind::Uniqueness, tag(check_intertwining(tr, fd1, fd2, dInter)));
    add(s, CheckKind::Uniqueness, tag(check_intertwining(tr, fd1, fd2, tInter)));
    add(s, CheckKind::Structural, tag(check_leading_term(tr, big, leadBasis)));

    const Transition bad = tr.dilated(Scalar(2));
    s.controls.push_back(control_from("transition composed with a fibre dilation [" + c2.label + "]",
                                      {check_linear_part(bad, ctx.dp(c1), ctx.dp(c2), fd2, db),
                                       check_intertwining(bad, fd1, fd2, dInter),
                                       check_intertwining(bad, fd1, fd2, tInter)}));
    long nontrivial = 0;
    for (const auto& K : indices_up_to(c1.pair->r, 4))
      if (tr.psi(single(K)) != single(K)) ++nontrivial;
    alts.push_back(ojson{{"label", c2.label}, {"psi_nontrivial_monomials_to_weight_4", nontrivial}});
  }
  s.artifacts["alternatives"] = alts;
}

ojson class_table_json(const ClassTable& t) {
  ojson out = ojson::array();
  for (const auto& [key, val] : t.entries) {
    bool zero = std::all_of(val.second.begin(), val.second.end(), [](const Scalar& x) { return sgn(x) == 0; });
    if (zero) continue;
    ojson v = ojson::array();
    for (const auto& x : val.second) v.push_back(to_string(x));
    out.push_back(ojson{{"x", "H" + std::to_string(key.first.degree) + "[" + std::to_string(key.first.index) + "]"},
                        {"y", "H" + std::to_string(key.second.degree) + "[" + std::to_string(key.second.index) + "]"},
                        {"degree", val.first},
                        {"value", v}});
  }
  return out;
}

template <class K>
ojson dims_json(const Cohomology<K>& H) {
  ojson out = ojson::object();
  for (int n : H.degrees())
    if (H.complete(n)) out[std::to_string(n)] = H.dim(n);
  return out;
}

// Cross-choice comparison and the doubling control for one side.
template <class K, class MakeBracket>
void compare_choices(Context& ctx, StageReport& s, const Cohomology<K>& H, const InducedStructure& base,
                     const Bilinear<K>& cupOp, MakeBracket&& makeBracket, const std::string& side,
                     std::uint64_t seed) {
  for (std::size_t i = 1; i < ctx.num_choices(); ++i) {
    Choice& c2 = ctx.choice(i);
    const InducedStructure other = induced_structure(H, makeBracket(c2), cupOp, seed);
    add(s, CheckKind::Uniqueness,
        compare_tables(side + " induced brackets agree across choices [" + c2.label + "]", base.bracket, other.bracket));
  }
  std::map<int, Matrix> T, Tinv;
  std::map<int, int> dims;
  for (int n : H.degrees()) {
    if (!H.complete(n)) continue;
    const int d = H.dim(n);
    dims[n] = d;
    Matrix t(d, ScalarVec(d)), ti(d, ScalarVec(d));
    for (int k = 0; k < d; ++k) {
      t[k][k] = 2;
      ti[k][k] = Scalar(1, 2);
    }
    T[n] = t;
    Tinv[n] = ti;
  }
  // The cup table is nonzero whenever H is not concentrated in one degree, so its
  // control stays applicable on pairs whose induced bracket vanishes.
  for (const auto& [what, table] : {std::pair<std::string, const ClassTable*>{"bracket", &base.bracket},
                                    std::pair<std::string, const ClassTable*>{"cup", &base.cup}}) {
    ControlRecord rec(side + " " + what + " transported along 2 id");
    const bool allZero = class_table_json(*table).empty();
    auto moved = transport(*table, T, Tinv, dims);
    if (allZero || !moved) {
      rec.applicable = false;
      rec.note = allZero ? "every induced " + what + " vanishes" : what + " table incomplete";
    } else {
      ControlRecord det = control_from(rec.name, {compare_tables("transported", *moved, *table)});
      rec.detected = det.detected;
      rec.witness = det.witness;
    }
    s.controls.push_back(rec);
  }
}

void stage_cohomology(Context& ctx, StageReport& s, std::uint64_t seed) {
  Choice& c = ctx.choice(0);
  const LiePair& p = *c.pair;
  const Enveloping& env = ctx.pbw(c).env();
  auto tag = [](std::vector<IdentityCheck> cs, const std::string& side) {
    for (auto& x : cs) x.identity = side + ": " + x.identity;
    return cs;
  };

  const Cohomology<TSmallKey> HT(t_complex(p));
  Bilinear<TSmallKey> tcup = [](const TSmallKey& x, const TSmallKey& y) { return cup(x, y); };
  auto tBracket = [&](Choice& ch) -> Bilinear<TSmallKey> {
    TTransfer* tr = &ctx.tt(ch);
    return [tr](const TSmallKey& x, const TSmallKey& y) { return tr->lambda2(x, y); };
  };
  const InducedStructure IT = induced_structure(HT, tBracket(c), tcup, seed);
  add(s, CheckKind::Cohomology, tag(IT.checks, "polyvector"));
  compare_choices(ctx, s, HT, IT, tcup, tBracket, "polyvector", seed);

  const Cohomology<DSmallKey> HD(d_complex(p, env, kCohomologyOrder, kCohomologyDegree));
  Bilinear<DSmallKey> dcup = [](const DSmallKey& x, const DSmallKey& y) { return cup(x, y); };
  auto dBracket = [&](Choice& ch) -> Bilinear<DSmallKey> {
    DTransfer* tr = &ctx.dt(ch);
    return [tr](const DSmallKey& x, const DSmallKey& y) { return tr->lambda2(x, y); };
  };
  const InducedStructure ID = induced_structure(HD, dBracket(c), dcup, seed);
  add(s, CheckKind::Cohomology, tag(ID.checks, "polydifferential"));
  compare_choices(ctx, s, HD, ID, dcup, dBracket, "polydifferential", seed);

  s.artifacts["polyvector"] = ojson{{"dims", dims_json(HT)},
                                    {"out_of_range_products", IT.outOfRange},
                                    {"bracket", class_table_json(IT.bracket)},
                                    {"cup", class_table_json(IT.cup)}};
  s.artifacts["polydifferential"] = ojson{{"max_order", kCohomologyOrder},
                                          {"max_degree", kCohomologyDegree},
                                          {"dims", dims_json(HD)},
                                          {"out_of_range_products", ID.outOfRange},
                                          {"bracket", class_table_json(ID.bracket)},
                                          {"cup", class_table_json(ID.cup)}};
  s.artifacts["seed"] = seed;
}

void finish_status(StageReport& s) {
  if (!s.status.empty()) return;
  bool ok = std::all_of(s.checks.begin(), s.checks.end(), [](const CheckRecord& c) { return c.check.pass(); }) &&
            std::all_of(s.controls.begin(), s.controls.end(), [](const ControlRecord& c) { return c.pass(); });
  s.status = ok ? "pass" : "fail";
}

}  // namespace

RunReport run_pipeline(const RunConfig& cfg) {
  validate_config(cfg);
  RunReport rep;
  rep.config = cfg;
  std::optional<Context> ctx;
  try {
    PairFile file = load_pair_file(cfg.pairPath);
    rep.pairName = file.spec.name;
    ctx.emplace(cfg, std::move(file));
  } catch (const std::exception& e) {
    rep.error = e.what();
    return rep;
  }
  const bool valid = validate_pair(ctx->file().spec).ok();
  for (const auto& name : cfg.suites) {
    StageReport s;
    s.name = name;
    if (name != "validate" && !valid) {
      s.status = "skipped";
      s.error = "the pair failed validation";
      rep.stages.push_back(std::move(s));
      continue;
    }
    try {
      if (name == "validate") stage_validate(*ctx, s);
      else if (name == "fedosov") stage_fedosov(*ctx, s);
      else if (name == "contraction") stage_contraction(*ctx, s);
      else if (name == "transfer-t") stage_transfer_t(*ctx, s, cfg.arity);
      else if (name == "transfer-d") stage_transfer_d(*ctx, s, cfg.arity);
      else if (name == "matched") stage_matched(*ctx, s);
      else if (name == "uniqueness") stage_uniqueness(*ctx, s);
      else if (name == "cohomology") stage_cohomology(*ctx, s, cfg.seed);
      finish_status(s);
    } catch (const std::exception& e) {
      s.status = "error";
      s.error = e.what();
    }
    rep.stages.push_back(std::move(s));
  }
  return rep;
}

long RunReport::total_checks() const {
  long n = 0;
  for (const auto& s : stages) n += static_cast<long>(s.checks.size());
  return n;
}

long RunReport::failed_checks() const {
  long n = 0;
  for (const auto& s : stages)
    for (const auto& c : s.checks) n += !c.check.pass();
  return n;
}

int RunReport::exit_code() const {
  if (!error.empty()) return 1;
  for (const auto& s : stages)
    if (s.status == "fail" || s.status == "error" || s.status == "skipped") return 1;
  return 0;
}

nlohmann::ordered_json RunReport::to_json() const {
  ojson j;
  j["schema"] = "v1";
  j["config"] = ojson{{"pair", config.pairPath},
                      {"trunc", config.trunc},
                      {"arity", config.arity},
                      {"suites", config.suites},
                      {"seed", config.seed}};
  j["pair"] = pairName;
  if (!error.empty()) j["error"] = error;
  ojson stagesJ = ojson::array();
  for (const auto& s : stages) {
    ojson sj;
    sj["stage"] = s.name;
    sj["status"] = s.status;
    if (!s.error.empty()) sj["error"] = s.error;
    ojson checks = ojson::array();
    for (const auto& c : s.checks) {
      ojson cj{{"kind", to_string(c.kind)},
               {"identity", c.check.identity},
               {"status", c.check.pass() ? "pass" : "fail"},
               {"checked", c.check.checked},
               {"failures", c.check.failures},
               {"mode", c.sampled ? "sampled" : "exhaustive"}};
      if (c.sampled) cj["seed"] = config.seed;
      if (!c.check.pass()) cj["witness"] = ojson{{"first", c.check.witness}};
      checks.push_back(cj);
    }
    sj["checks"] = checks;
    ojson controls = ojson::array();
    for (const auto& c : s.controls) {
      ojson cj{{"control", c.name},
               {"status", !c.applicable ? "not-applicable" : c.detected ? "detected" : "missed"}};
      if (!c.witness.empty()) cj["witness"] = c.witness;
      if (!c.note.empty()) cj["note"] = c.note;
      controls.push_back(cj);
    }
    sj["controls"] = controls;
    ojson findings = ojson::array();
    for (const auto& f : s.findings) findings.push_back(ojson{{"name", f.name}, {"detail", f.detail}});
    sj["findings"] = findings;
    sj["artifacts"] = s.artifacts;
    stagesJ.push_back(sj);
  }
  j["stages"] = stagesJ;
  j["summary"] = ojson{{"checks", total_checks()},
                       {"failed", failed_checks()},
                       {"status", exit_code() == 0 ? "pass" : "fail"}};
  return j;
}

std::string RunReport::summary() const {
  std::ostringstream os;
  os << "pair " << (pairName.empty() ? config.pairPath : pairName) << "  N=" << config.trunc
     << " K=" << config.arity << " seed=" << config.seed << "\n";
  if (!error.empty()) os << "  input error: " << error << "\n";
  for (const auto& s : stages) {
    long bad = 0;
    for (const auto& c : s.checks) bad += !c.check.pass();
    os << "  " << s.name << ": " << s.status << " (" << s.checks.size() << " checks, " << bad << " failed";
    if (!s.controls.empty()) os << ", " << s.controls.size() << " controls";
    os << ")\n";
    if (!s.error.empty()) os << "    error: " << s.error << "\n";
    for (const auto& c : s.checks)
      if (!c.check.pass())
        os << "    FAIL " << c.check.identity << ": " << c.check.failures << "/" << c.check.checked
           << " witness " << c.check.witness << "\n";
    for (const auto& c : s.controls)
      if (!c.pass()) os << "    MISSED control " << c.name << "\n";
    for (const auto& f : s.findings) os << "    note " << f.name << ": " << f.detail << "\n";
  }
  os << "result: " << (exit_code() == 0 ? "pass" : "fail") << " (" << total_checks() << " checks, " << failed_checks()
     << " failed)\n";
  return os.str();
}

}  // namespace artifact
