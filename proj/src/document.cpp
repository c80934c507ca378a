#include "endo/document.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"

namespace endo {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  fail(ErrorKind::ParseError, where + ": " + what);
}

// Recursive descent over the literal grammar, generic in the value type.
template <class T>
class LiteralParser {
 public:
  LiteralParser(const std::string& text, std::function<T(const std::string&)> gen, std::function<T(const Rational&)> scalar)
      : s_(text), gen_(std::move(gen)), scalar_(std::move(scalar)) {}

  T run() {
    skip();
    if (pos_ >= s_.size()) error("empty literal");
    T v = sum();
    skip();
    if (pos_ < s_.size()) error(std::string("unexpected '") + s_[pos_] + "'");
    return v;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
  std::function<T(const std::string&)> gen_;
  std::function<T(const Rational&)> scalar_;

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::ParseError, "column " + std::to_string(pos_ + 1) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  T sum() {
    T v = product();
    while (true) {
      if (eat('+'))
        v = v + product();
      else if (eat('-'))
        v = v - product();
      else
        return v;
    }
  }
  T product() {
    T v = unary();
    while (true) {
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        std::size_t at = pos_;
        T d = unary();
        if (is_zero(d)) {
          pos_ = at;
          error("division by zero");
        }
        v = v * inverse(d);
      } else {
        return v;
      }
    }
  }
  T unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  T power() {
    T b = atom();
    if (!eat('^')) return b;
    skip();
    bool neg = false;
    if (eat('-')) neg = true;
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected an integer exponent");
    if (pos_ - start > 6) error("exponent too large");
    long k = std::stol(s_.substr(start, pos_ - start));
    if (neg) {
      if (is_zero(b)) error("negative power of zero");
      k = -k;
    }
    return b.pow(k);
  }
  T atom() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of literal");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      T v = sum();
      if (!eat(')')) error("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return scalar_(Rational(mpz_class(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      try {
        return gen_(name);
      } catch (const Error&) {
        pos_ = start;
        error("unknown generator '" + name + "'");
      }
    }
    error(std::string("unexpected '") + c + "'");
  }
};

FieldElement tower_generator(const TowerPtr& t, const std::string& name) {
  if (name == "pi") return t->e() > 1 ? t->gen_pi() : t->uniformizer();
  if (name == "u" && t->f() > 1) return t->gen_u();
  fail(ErrorKind::ParseError, "unknown generator");
}

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

// Context for schema and literal errors: a JSON path.
struct Reader {
  std::string path;

  Reader at(const std::string& key) const { return {path + "." + key}; }
  Reader at(std::size_t k) const { return {path + "[" + std::to_string(k) + "]"}; }

  std::string str(const json& j) const {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    parse_fail(path, "expected a string or integer literal");
  }
  long integer(const json& j) const {
    if (!j.is_number_integer()) parse_fail(path, "expected an integer");
    return j.get<long>();
  }
  Rational rational(const json& j) const {
    std::string t = str(j);
    try {
      Rational q(t);
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
      parse_fail(path, "expected a rational number, got '" + t + "'");
    }
  }
  const json& need(const json& obj, const std::string& key) const {
    if (!obj.is_object()) parse_fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) parse_fail(path, "missing field '" + key + "'");
    return *it;
  }
  FieldElement field(const json& j, const TowerPtr& t) const {
    try {
      return parse_field_literal(str(j), t);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ParseError) throw;
      parse_fail(path, e.what());
    }
  }
  EtaleElement etale(const json& j, const EtalePtr& alg) const {
    if (j.is_array()) {
      if (j.size() != 2) parse_fail(path, "a pair needs two entries");
      if (!alg->pair_model()) parse_fail(path, "pairs are only allowed for split algebras with delta = 1");
      return alg->from_pair(at(0).field(j[0], alg->base()), at(1).field(j[1], alg->base()));
    }
    try {
      return parse_etale_literal(str(j), alg);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ParseError) throw;
      parse_fail(path, e.what());
    }
  }
};

std::optional<FieldElement> opt_field(const json& obj, const std::string& key, const TowerPtr& t, const Reader& r) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return r.at(key).field(*it, t);
}

TowerPtr make_tower(const BaseField& base, const json& desc, const Reader& r) {
  int f = static_cast<int>(r.at("f").integer(r.need(desc, "f")));
  if (f < 1) parse_fail(r.path, "f must be positive");
  std::optional<std::vector<Rational>> unram;
  if (desc.contains("unramified")) {
    std::vector<Rational> u;
    Reader ru = r.at("unramified");
    for (std::size_t k = 0; k < desc["unramified"].size(); ++k) u.push_back(ru.at(k).rational(desc["unramified"][k]));
    unram = u;
  }
  std::vector<std::vector<Rational>> eis;
  if (desc.contains("eisenstein")) {
    Reader re = r.at("eisenstein");
    const json& arr = desc["eisenstein"];
    if (!arr.is_array()) parse_fail(re.path, "expected an array of coefficients");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      std::vector<Rational> coeff;
      if (arr[k].is_array())
        for (std::size_t m = 0; m < arr[k].size(); ++m) coeff.push_back(re.at(k).at(m).rational(arr[k][m]));
      else
        coeff.push_back(re.at(k).rational(arr[k]));
      eis.push_back(coeff);
    }
  } else {
    eis = {{Rational(-base.p)}, {Rational(1)}};
  }
  return Tower::make(base, f, eis, unram);
}

Side parse_side(const json& j, const Reader& r) {
  std::string s = r.str(j);
  if (s == "minus") return Side::Minus;
  if (s == "plus") return Side::Plus;
  parse_fail(r.path, "side must be 'minus' or 'plus'");
}

}  // namespace

FieldElement parse_field_literal(const std::string& text, const TowerPtr& tower) {
  LiteralParser<FieldElement> p(
      text, [&](const std::string& n) { return tower_generator(tower, n); },
      [&](const Rational& q) { return tower->scalar(q); });
  return p.run();
}

EtaleElement parse_etale_literal(const std::string& text, const EtalePtr& alg) {
  LiteralParser<EtaleElement> p(
      text,
      [&](const std::string& n) {
        if (n == "s") return alg->sqrt_delta();
        return alg->element(tower_generator(alg->base(), n));
      },
      [&](const Rational& q) { return alg->scalar(q); });
  return p.run();
}

InstanceDocument parse_document(const std::string& text, std::optional<int> precision) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ParseError, line_column(text, e.byte == 0 ? 0 : e.byte - 1) + ": malformed JSON");
  }
  Reader root{"$"};
  if (!doc.is_object()) parse_fail(root.path, "expected an object");
  InstanceDocument out;

  // Base field.
  Reader rb = root.at("base");
  const json& base = root.need(doc, "base");
  BaseField bf = BaseField::real();
  if (base.contains("field") && rb.at("field").str(base["field"]) == "real") {
    bf = BaseField::real();
  } else {
    long p = rb.at("p").integer(rb.need(base, "p"));
    int prec = precision ? *precision : base.contains("precision") ? static_cast<int>(rb.at("precision").integer(base["precision"])) : 64;
    bf = BaseField::padic(p, prec);
  }
  TowerPtr F = Tower::trivial(bf);
  out.towers["F"] = F;
  if (doc.contains("towers")) {
    Reader rt = root.at("towers");
    if (!doc["towers"].is_object()) parse_fail(rt.path, "expected an object");
    for (const auto& [name, desc] : doc["towers"].items()) {
      if (name == "F") parse_fail(rt.at(name).path, "the name F is reserved for the base");
      out.towers[name] = make_tower(bf, desc, rt.at(name));
    }
  }

  // Group.
  Reader rg = root.at("group");
  const json& grp = root.need(doc, "group");
  GroupDescriptor& g = out.g;
  try {
    g.kind = parse_group_case(rg.at("case").str(rg.need(grp, "case")));
  } catch (const Error& e) {
    parse_fail(rg.at("case").path, e.what());
  }
  g.d = static_cast<int>(rg.at("d").integer(rg.need(grp, "d")));
  g.base = F;
  g.delta = opt_field(grp, "delta", F, rg);
  g.nu = opt_field(grp, "nu", F, rg);
  g.eta = opt_field(grp, "eta", F, rg);
  if (is_unitary(g.kind)) {
    g.unitary = UnitaryBaseData::make(F, rg.at("delta_E").rational(rg.need(grp, "delta_E")));
    g.eta_E = rg.at("eta_E").etale(rg.need(grp, "eta_E"), g.unitary->E);
    if (grp.contains("nu_E")) g.nu_E = rg.at("nu_E").etale(grp["nu_E"], g.unitary->E);
  }

  // Endoscopic datum.
  Reader re = root.at("endoscopic");
  const json& end = root.need(doc, "endoscopic");
  EndoscopicDatum& e = out.e;
  e.d_minus = static_cast<int>(re.at("d_minus").integer(re.need(end, "d_minus")));
  e.d_plus = static_cast<int>(re.at("d_plus").integer(re.need(end, "d_plus")));
  e.delta_minus = opt_field(end, "delta_minus", F, re);
  e.delta_plus = opt_field(end, "delta_plus", F, re);
  // A zero-dimensional factor has trivial discriminant unless stated.
  if (e.d_minus == 0 && !e.delta_minus) e.delta_minus = F->one();
  if (e.d_plus == 0 && !e.delta_plus) e.delta_plus = F->one();
  e.chi = opt_field(end, "chi", F, re);
  for (const char* key : {"mu_minus", "mu_plus"}) {
    if (!end.contains(key)) continue;
    Reader rm = re.at(key);
    const json& m = end[key];
    TameCharacter mu;
    if (m.contains("angle")) mu.angle = rm.at("angle").rational(m["angle"]);
    if (m.contains("exponent")) mu.exponent = rm.at("exponent").integer(m["exponent"]);
    (std::string(key) == "mu_minus" ? e.mu_minus : e.mu_plus) = mu;
  }
  if (end.contains("cocycle")) {
    std::string c = re.at("cocycle").str(end["cocycle"]);
    if (c == "trivial")
      e.cocycle = Cocycle::Trivial;
    else if (c == "nontrivial")
      e.cocycle = Cocycle::Nontrivial;
    else
      parse_fail(re.at("cocycle").path, "expected 'trivial' or 'nontrivial'");
  }

  // Indices.
  Reader ri = root.at("indices");
  const json& idx = doc.contains("indices") ? doc["indices"] : json::array();
  if (!idx.is_array()) parse_fail(ri.path, "expected an array");
  for (std::size_t k = 0; k < idx.size(); ++k) {
    Reader r = ri.at(k);
    const json& j = idx[k];
    std::string name = r.at("name").str(r.need(j, "name"));
    Side side = parse_side(r.need(j, "side"), r.at("side"));
    std::string over = j.contains("over") ? r.at("over").str(j["over"]) : "F";
    auto tw = out.towers.find(over);
    if (tw == out.towers.end()) parse_fail(r.at("over").path, "unknown tower '" + over + "'");
    const TowerPtr& t = tw->second;
    EtalePtr alg;
    if (is_unitary(g.kind)) {
      if (j.contains("delta")) parse_fail(r.at("delta").path, "unitary indices are tensor products with E; omit delta");
      alg = g.unitary->tensor(t);
    } else {
      std::string d = r.at("delta").str(r.need(j, "delta"));
      if (d == "split" || d == "1")
        alg = QuadraticEtale::split(t);
      else
        alg = QuadraticEtale::make(r.at("delta").field(j["delta"], t));
    }
    IndexParam yi{name, side, alg, r.at("y").etale(r.need(j, "y"), alg), std::nullopt};
    if (j.contains("endoscopic_c")) yi.c = r.at("endoscopic_c").etale(j["endoscopic_c"], alg);
    IndexParam xi{name, side, alg, yi.elem, std::nullopt};
    if (j.contains("x")) xi.elem = r.at("x").etale(j["x"], alg);
    else if (is_twisted(g.kind)) parse_fail(r.path, "twisted cases need x");
    if (j.contains("c")) xi.c = r.at("c").etale(j["c"], alg);
    out.y.indices.push_back(std::move(yi));
    out.x.indices.push_back(std::move(xi));
  }
  out.x.x_D = opt_field(doc, "x_D", F, root);
  out.x.d_line = opt_field(doc, "d_line", F, root);
  if (g.kind == GroupCase::SoOdd && g.eta && !out.x.d_line) out.x.d_line = forced_d_line(out.x, g);
  return out;
}

InstanceDocument load_document(const std::string& path, std::optional<int> precision) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, path + ": cannot read file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), precision);
}

namespace {

json rationals(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(q.get_str());
  return a;
}

json tame(const TameCharacter& mu) { return {{"angle", mu.angle.get_str()}, {"exponent", mu.exponent}}; }

}  // namespace

std::string serialize_document(const InstanceDocument& doc) {
  const GroupDescriptor& g = doc.g;
  json out;
  const BaseField& bf = g.base->base();
  if (bf.is_real())
    out["base"] = {{"field", "real"}};
  else
    out["base"] = {{"p", bf.p}, {"precision", bf.precision}};

  json towers = json::object();
  for (const auto& [name, t] : doc.towers) {
    if (name == "F") continue;
    json eis = json::array();
    for (const auto& c : t->eisenstein_poly()) eis.push_back(rationals(c));
    towers[name] = {{"f", t->f()}, {"eisenstein", eis}, {"unramified", rationals(t->unramified_poly())}};
  }
  if (!towers.empty()) out["towers"] = towers;

  json grp = {{"case", case_name(g.kind)}, {"d", g.d}};
  if (g.delta) grp["delta"] = to_string(*g.delta);
  if (g.nu) grp["nu"] = to_string(*g.nu);
  if (g.eta) grp["eta"] = to_string(*g.eta);
  if (g.unitary) grp["delta_E"] = g.unitary->delta_E.get_str();
  if (g.eta_E) grp["eta_E"] = to_string(*g.eta_E);
  if (g.nu_E) grp["nu_E"] = to_string(*g.nu_E);
  out["group"] = grp;

  const EndoscopicDatum& e = doc.e;
  json end = {{"d_minus", e.d_minus}, {"d_plus", e.d_plus}};
  if (e.delta_minus) end["delta_minus"] = to_string(*e.delta_minus);
  if (e.delta_plus) end["delta_plus"] = to_string(*e.delta_plus);
  if (e.chi) end["chi"] = to_string(*e.chi);
  if (e.mu_minus) end["mu_minus"] = tame(*e.mu_minus);
  if (e.mu_plus) end["mu_plus"] = tame(*e.mu_plus);
  end["cocycle"] = e.cocycle == Cocycle::Trivial ? "trivial" : "nontrivial";
  out["endoscopic"] = end;

  json indices = json::array();
  for (std::size_t k = 0; k < doc.y.indices.size(); ++k) {
    const IndexParam& yi = doc.y.indices[k];
    const IndexParam& xi = doc.x.indices.at(k);
    const TowerPtr& t = yi.algebra->base();
    std::string over = "F";
    for (const auto& [name, tw] : doc.towers)
      if (tw == t) over = name;
    json j = {{"name", yi.name}, {"side", yi.side == Side::Minus ? "minus" : "plus"}, {"over", over}};
    if (!is_unitary(g.kind)) j["delta"] = yi.algebra->pair_model() ? "split" : to_string(yi.algebra->delta());
    j["y"] = to_string(yi.elem);
    j["x"] = to_string(xi.elem);
    if (xi.c) j["c"] = to_string(*xi.c);
    if (yi.c) j["endoscopic_c"] = to_string(*yi.c);
    indices.push_back(j);
  }
  out["indices"] = indices;
  if (doc.x.x_D) out["x_D"] = to_string(*doc.x.x_D);
  if (doc.x.d_line) out["d_line"] = to_string(*doc.x.d_line);
  return out.dump(2) + "\n";
}

}  // namespace endo
