#include "gmra/config.hpp"

#include "gmra/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace gmra {

namespace {

void require_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigError, where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw Error(ErrorCode::ConfigError, where + ": unknown key \"" + it.key() + "\"");
}

const json& field(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw Error(ErrorCode::ConfigError, where + ": missing \"" + key + "\"");
  return j.at(key);
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

Rational parse_rational_text(const std::string& text, const std::string& where) {
  try {
    return Rational::parse(trim(text));
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, where + ": \"" + text + "\" is not a rational p/q");
  }
}

std::string surd_token(const Rational& coef, long long radicand) {
  if (radicand == 1) return coef.to_string();
  const std::string root = "sqrt" + std::to_string(radicand);
  if (coef == Rational(1)) return root;
  if (coef == Rational(-1)) return "-" + root;
  return coef.to_string() + "*" + root;
}

json piece_value(const Value& v, json piece) {
  if (v.is_exact()) {
    const Surd& s = *v.exact();
    piece["re"] = surd_token(s.re(), s.radicand());
    if (!s.im().is_zero()) piece["im"] = surd_token(s.im(), s.radicand());
  } else {
    piece["re"] = v.num().real();
    if (v.num().imag() != 0.0) piece["im"] = v.num().imag();
  }
  return piece;
}

Value piece_value_of(const json& p, const std::string& where) {
  Value v = p.contains("re") ? parse_value_token(p.at("re"), where + ".re") : Value::zero();
  if (p.contains("im")) v += Value(Surd::i()) * parse_value_token(p.at("im"), where + ".im");
  return v;
}

json point_json(const TorusPoint& w) {
  if (w.size() == 1) return w[0].to_string();
  json a = json::array();
  for (const auto& x : w) a.push_back(x.to_string());
  return a;
}

TorusPoint point_of(const json& j, const std::string& where) {
  TorusPoint w;
  if (j.is_array())
    for (const auto& x : j) w.push_back(parse_rational_field(x, where));
  else
    w.push_back(parse_rational_field(j, where));
  return reduce(w);
}

std::vector<PieceSpec> piece_specs(const json& pieces, const std::string& where) {
  if (!pieces.is_array()) throw Error(ErrorCode::ConfigError, where + ": pieces must be an array");
  std::vector<PieceSpec> out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    const json& p = pieces[i];
    require_keys(p, {"lo", "hi", "re", "im", "pm"}, w);
    bool pm = p.value("pm", false);
    out.push_back({parse_rational_field(field(p, "lo", w), w + ".lo"), parse_rational_field(field(p, "hi", w), w + ".hi"),
                   piece_value_of(p, w), pm});
  }
  return out;
}

FilterFn parse_filter_entry(const json& e, const std::string& where) {
  if (!e.is_object()) throw Error(ErrorCode::ConfigError, where + ": filter entry must be an object");
  const std::string type = field(e, "type", where).get<std::string>();
  if (type == "zero") {
    require_keys(e, {"type"}, where);
    return FilterFn::zero();
  }
  if (type == "piecewise") {
    require_keys(e, {"type", "pieces"}, where);
    return FilterFn::piecewise(pc_from_pieces(piece_specs(field(e, "pieces", where), where + ".pieces"), true));
  }
  if (type == "smooth_qmf" || type == "smooth_qmf_highpass") {
    require_keys(e, {"type", "epsilon", "shift", "window", "factor"}, where);
    Rational eps = e.contains("epsilon") ? parse_rational_field(e.at("epsilon"), where + ".epsilon") : default_epsilon();
    SmoothPtr base = make_qmf_lowpass(eps);
    if (type == "smooth_qmf_highpass") base = highpass_from_lowpass_classical(base);
    Rational shift = e.contains("shift") ? parse_rational_field(e.at("shift"), where + ".shift") : Rational();
    std::optional<PiecewiseFn> mask;
    if (e.contains("window")) {
      std::vector<Interval> parts;
      for (const auto& iv : e.at("window")) {
        require_keys(iv, {"lo", "hi"}, where + ".window");
        parts.push_back({parse_rational_field(field(iv, "lo", where), where + ".window.lo"),
                         parse_rational_field(field(iv, "hi", where), where + ".window.hi")});
      }
      mask = pc_indicator(IntervalSet(parts));
    }
    Value factor = e.contains("factor") ? parse_value_token(e.at("factor"), where + ".factor") : Value::one();
    return FilterFn::smooth(base, shift, mask, factor);
  }
  if (type == "sampled") {
    require_keys(e, {"type", "points"}, where);
    std::map<TorusPoint, Value> values;
    for (const auto& p : field(e, "points", where)) {
      require_keys(p, {"x", "re", "im"}, where + ".points");
      values[point_of(field(p, "x", where), where + ".points.x")] = piece_value_of(p, where + ".points");
    }
    return FilterFn::sampled(std::move(values));
  }
  throw Error(ErrorCode::ConfigError, where + ": unknown filter type \"" + type + "\"");
}

json filter_entry_json(const FilterFn& f, const DilationScheme& s, const std::vector<TorusPoint>& grid) {
  if (f.is_zero_function()) return {{"type", "zero"}};
  if (auto p = f.as_piecewise()) {
    json pieces = json::array();
    for (const auto& piece : p->pieces())
      pieces.push_back(piece_value(piece.value, {{"lo", piece.iv.lo.to_string()}, {"hi", piece.iv.hi.to_string()}}));
    return {{"type", "piecewise"}, {"pieces", pieces}};
  }
  if (auto sm = f.as_smooth()) {
    json e;
    if (sm->base->kind() == "qmf_lowpass")
      e["type"] = "smooth_qmf";
    else if (sm->base->kind() == "qmf_highpass")
      e["type"] = "smooth_qmf_highpass";
    else
      throw Error(ErrorCode::Unsupported, "cannot serialize smooth filter " + sm->base->kind());
    e["epsilon"] = sm->base->epsilon().to_string();
    if (!sm->shift.is_zero()) e["shift"] = sm->shift.to_string();
    if (sm->mask) {
      json window = json::array();
      for (const auto& piece : sm->mask->pieces()) {
        if (!(piece.value == Value::one())) throw Error(ErrorCode::Unsupported, "smooth filter mask must be an indicator");
        window.push_back({{"lo", piece.iv.lo.to_string()}, {"hi", piece.iv.hi.to_string()}});
      }
      e["window"] = window;
    }
    if (!(sm->factor == Value::one())) {
      json fj = piece_value(sm->factor, json::object());
      if (fj.contains("im")) throw Error(ErrorCode::Unsupported, "complex smooth factor");
      e["factor"] = fj["re"];
    }
    return e;
  }
  std::set<TorusPoint> keys;
  if (auto sa = f.as_sampled())
    for (const auto& [k, v] : sa->values) keys.insert(k);
  for (const auto& w : grid) {
    keys.insert(reduce(w));
    for (const auto& p : preimages(s, w)) keys.insert(p);
  }
  json points = json::array();
  for (const auto& k : keys) points.push_back(piece_value(f(k), {{"x", point_json(k)}}));
  return {{"type", "sampled"}, {"points", points}};
}

json value_matrix_json(const ValueMatrix& V) {
  json rows = json::array();
  for (const auto& row : V) {
    json r = json::array();
    for (const auto& v : row) {
      if (v.is_exact() && v.exact()->im().is_zero())
        r.push_back(value_token(v));
      else
        r.push_back(piece_value(v, json::object()));
    }
    rows.push_back(r);
  }
  return rows;
}

ValueMatrix value_matrix_of(const json& j, const std::string& where) {
  ValueMatrix V;
  for (const auto& row : j) {
    std::vector<Value> r;
    for (const auto& v : row) r.push_back(v.is_object() ? piece_value_of(v, where) : parse_value_token(v, where));
    V.push_back(std::move(r));
  }
  return V;
}

std::vector<std::vector<json>> entry_matrix(const json& j, const std::string& where) {
  if (!j.is_array()) throw Error(ErrorCode::ConfigError, where + ": expected a matrix of filter entries");
  std::vector<std::vector<json>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw Error(ErrorCode::ConfigError, where + ": rows must be arrays");
    rows.emplace_back(row.begin(), row.end());
  }
  return rows;
}

FilterMatrix filter_matrix(const std::vector<std::vector<json>>& rows, const std::string& where) {
  FilterMatrix M;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<FilterFn> r;
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      r.push_back(parse_filter_entry(rows[i][j], where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
    M.push_back(std::move(r));
  }
  return M;
}

}  // namespace

Rational parse_rational_field(const json& v, const std::string& where) {
  if (!v.is_string())
    throw Error(ErrorCode::ConfigError, where + ": geometry must be a \"p/q\" string, got " + v.dump());
  return parse_rational_text(v.get<std::string>(), where);
}

Value parse_value_token(const json& v, const std::string& where) {
  if (v.is_number()) return Value(v.get<double>());
  if (!v.is_string()) throw Error(ErrorCode::ConfigError, where + ": value must be a number or token");
  std::string t = trim(v.get<std::string>());
  bool neg = false;
  if (!t.empty() && t[0] == '-') {
    neg = true;
    t = trim(t.substr(1));
  }
  Rational coef(1);
  long long radicand = 1;
  auto star = t.find('*');
  std::string root = t;
  if (star != std::string::npos) {
    coef = parse_rational_text(t.substr(0, star), where);
    root = trim(t.substr(star + 1));
  }
  if (root.rfind("sqrt", 0) == 0) {
    try {
      std::size_t used = 0;
      radicand = std::stoll(root.substr(4), &used);
      if (used != root.size() - 4 || radicand < 1) throw std::invalid_argument("radicand");
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, where + ": bad square root token \"" + root + "\"");
    }
  } else if (star != std::string::npos) {
    throw Error(ErrorCode::ParseError, where + ": expected sqrtN after '*' in \"" + t + "\"");
  } else {
    coef = parse_rational_text(root, where);
  }
  Value out = Value(Surd(coef)) * Value::sqrt(radicand);
  return neg ? -out : out;
}

std::string value_token(const Value& v) {
  if (!v.is_exact() || !v.exact()->im().is_zero())
    throw Error(ErrorCode::Unsupported, "no real exact token for " + v.to_string());
  return surd_token(v.exact()->re(), v.exact()->radicand());
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

SystemConfig parse_system_config(const json& j) {
  require_keys(j, {"name", "comment", "dilation", "multiplicity", "lowpass", "highpass", "checks"}, "system");
  SystemConfig cfg;
  cfg.raw = j;
  cfg.name = j.value("name", "");
  for (const auto& row : field(j, "dilation", "system")) {
    IntVector r;
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw Error(ErrorCode::ConfigError, "dilation entries must be integers");
      r.push_back(v.get<long long>());
    }
    cfg.A.push_back(std::move(r));
  }
  const json& mj = field(j, "multiplicity", "system");
  require_keys(mj, {"pieces", "constant"}, "multiplicity");
  const int d = static_cast<int>(cfg.A.size());
  if (mj.contains("constant")) {
    cfg.m = MultiplicityFn::constant(d, mj.at("constant").get<int>());
  } else {
    std::vector<IntPiece> pieces;
    for (const auto& p : field(mj, "pieces", "multiplicity")) {
      require_keys(p, {"lo", "hi", "value"}, "multiplicity.pieces");
      pieces.push_back({{parse_rational_field(field(p, "lo", "multiplicity"), "multiplicity.lo"),
                         parse_rational_field(field(p, "hi", "multiplicity"), "multiplicity.hi")},
                        field(p, "value", "multiplicity").get<int>()});
    }
    cfg.m = MultiplicityFn::from_pieces(std::move(pieces));
  }
  cfg.lowpass = entry_matrix(field(j, "lowpass", "system"), "lowpass");
  cfg.highpass = entry_matrix(field(j, "highpass", "system"), "highpass");
  if (j.contains("checks")) {
    require_keys(j.at("checks"), {"section_at_zero"}, "checks");
    if (j.at("checks").contains("section_at_zero"))
      cfg.section_at_zero = value_matrix_of(j.at("checks").at("section_at_zero"), "checks.section_at_zero");
  }
  return cfg;
}

SystemConfig load_system_config(const std::filesystem::path& path) { return parse_system_config(read_json_file(path)); }

SystemPtr assemble_system(const SystemConfig& cfg) {
  auto scheme = std::make_shared<const DilationScheme>(make_scheme(cfg.A));
  MultiplicityPair mp = make_multiplicity_pair(*scheme, cfg.m);
  return std::make_shared<const FilterSystem>(assemble_filter_system(
      scheme, mp, filter_matrix(cfg.lowpass, "lowpass"), filter_matrix(cfg.highpass, "highpass"), cfg.name));
}

SystemPtr build_system(const SystemConfig& cfg) {
  auto sys = assemble_system(cfg);
  return std::make_shared<const FilterSystem>(
      make_filter_system(sys->scheme, sys->mp, sys->H, sys->G, sys->name));
}

json system_to_json(const FilterSystem& sys, const std::vector<TorusPoint>& grid,
                    const std::optional<ValueMatrix>& section_at_zero) {
  json j;
  j["name"] = sys.name;
  j["dilation"] = sys.scheme->A;
  if (!sys.mp.m.exact()) throw Error(ErrorCode::Unsupported, "only piecewise multiplicities can be written");
  json pieces = json::array();
  for (const auto& p : sys.mp.m.pieces())
    pieces.push_back({{"lo", p.iv.lo.to_string()}, {"hi", p.iv.hi.to_string()}, {"value", p.value}});
  j["multiplicity"] = {{"pieces", pieces}};
  auto matrix = [&](const FilterMatrix& M) {
    json rows = json::array();
    for (const auto& row : M) {
      json r = json::array();
      for (const auto& f : row) r.push_back(filter_entry_json(f, *sys.scheme, grid));
      rows.push_back(r);
    }
    return rows;
  };
  j["lowpass"] = matrix(sys.H);
  j["highpass"] = matrix(sys.G);
  if (section_at_zero) j["checks"] = {{"section_at_zero", value_matrix_json(*section_at_zero)}};
  return j;
}

LoopElement parse_loop_config(const json& j) {
  require_keys(j, {"type", "epsilon", "row_phase", "comment"}, "loop");
  const std::string type = field(j, "type", "loop").get<std::string>();
  if (type != "journe_loop") throw Error(ErrorCode::ConfigError, "loop: unknown type \"" + type + "\"");
  Rational eps = j.contains("epsilon") ? parse_rational_field(j.at("epsilon"), "loop.epsilon") : default_epsilon();
  Value phase = j.contains("row_phase") ? parse_value_token(j.at("row_phase"), "loop.row_phase") : Value(Surd(Rational(-1)));
  if (j.contains("row_phase") && j.at("row_phase").is_number_integer())
    phase = Value(Surd(Rational(j.at("row_phase").get<long long>())));
  return journe_loop_element(eps, phase);
}

json journe_loop_config(const Rational& epsilon, int row_phase) {
  return {{"type", "journe_loop"}, {"epsilon", epsilon.to_string()}, {"row_phase", row_phase}};
}

std::vector<std::pair<std::string, json>> example_configs() {
  ValueMatrix lc{{Value::one(), Value::zero(), Value::zero()},
                 {Value::zero(), Value::zero(), Value::one()},
                 {Value::zero(), Value::one(), Value::zero()}};
  return {
      {"dyadic_box.json", system_to_json(*dyadic_box_system())},
      {"journe_canonical.json", system_to_json(*journe_canonical_system(), {}, lc)},
      {"journe_smooth.json", system_to_json(*journe_smooth_system())},
      {"journe_loop.json", journe_loop_config()},
  };
}

}  // namespace gmra
