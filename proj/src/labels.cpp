#include "fusionkit/labels.hpp"

#include "fusionkit/errors.hpp"

#include <cctype>
#include <numeric>
#include <set>
#include <tuple>

namespace fk {

Level Level::make(long u, long v) {
  if (u < 2) fail(ErrorKind::InvalidArgument, "level requires u >= 2, got u=" + std::to_string(u));
  if (v < 1) fail(ErrorKind::InvalidArgument, "level requires v >= 1, got v=" + std::to_string(v));
  if (std::gcd(u, v) != 1)
    fail(ErrorKind::InvalidArgument,
         "level requires gcd(u,v)=1, got " + std::to_string(u) + "/" + std::to_string(v));
  return Level(u, v);
}

Level Level::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) throw ParseError("level must be written u/v", text.size());
  auto read = [&](std::size_t from, std::size_t to) {
    if (from == to) throw ParseError("expected digits in level", from);
    long value = 0;
    for (std::size_t i = from; i < to; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw ParseError("expected digit in level", i);
      value = value * 10 + (text[i] - '0');
      if (value > 1000000) throw ParseError("level component too large", i);
    }
    return value;
  };
  long u = read(0, slash);
  long v = read(slash + 1, text.size());
  return make(u, v);
}

Rational Level::c_sl2() const { return 3 * k() / t(); }

Rational Level::c_n2() const { return 3 - frac(6 * v_, u_); }

std::string Level::str() const { return std::to_string(u_) + "/" + std::to_string(v_); }

WeightClass::WeightClass(const Rational& x) {
  rep_ = x - 2 * floor_div(x, Rational(2));
}

WeightClass WeightClass::parse(std::string_view text) { return WeightClass(parse_rational(text)); }

bool WeightClass::contains(const Rational& x) const { return WeightClass(x).rep_ == rep_; }

const char* kind_name(Sl2Kind kind) {
  switch (kind) {
    case Sl2Kind::L: return "L";
    case Sl2Kind::Dplus: return "Dplus";
    case Sl2Kind::Dminus: return "Dminus";
    case Sl2Kind::E: return "E";
    case Sl2Kind::Eplus: return "Eplus";
    case Sl2Kind::Eminus: return "Eminus";
    case Sl2Kind::P: return "P";
  }
  return "?";
}

Sl2Label Sl2Label::L(int r, int flow) { return {Sl2Kind::L, r, 0, {}, flow}; }
Sl2Label Sl2Label::Dplus(int r, int s, int flow) { return {Sl2Kind::Dplus, r, s, {}, flow}; }
Sl2Label Sl2Label::Dminus(int r, int s, int flow) { return {Sl2Kind::Dminus, r, s, {}, flow}; }
Sl2Label Sl2Label::E(const WeightClass& mu, int r, int s, int flow) { return {Sl2Kind::E, r, s, mu, flow}; }
Sl2Label Sl2Label::Eplus(int r, int s, int flow) { return {Sl2Kind::Eplus, r, s, {}, flow}; }
Sl2Label Sl2Label::Eminus(int r, int s, int flow) { return {Sl2Kind::Eminus, r, s, {}, flow}; }
Sl2Label Sl2Label::P(int r, int s, int flow) { return {Sl2Kind::P, r, s, {}, flow}; }

Sl2Label Sl2Label::flowed(int by) const {
  Sl2Label out = *this;
  out.flow += by;
  return out;
}

bool Sl2Label::is_simple() const {
  return kind == Sl2Kind::L || kind == Sl2Kind::Dplus || kind == Sl2Kind::Dminus || kind == Sl2Kind::E;
}

bool Sl2Label::operator==(const Sl2Label& o) const {
  return kind == o.kind && r == o.r && s == o.s && mu == o.mu && flow == o.flow;
}

bool Sl2Label::operator<(const Sl2Label& o) const {
  if (kind != o.kind) return kind < o.kind;
  if (r != o.r) return r < o.r;
  if (s != o.s) return s < o.s;
  if (!(mu == o.mu)) return mu < o.mu;
  return flow < o.flow;
}

Rational lambda_rs(const Level& level, long r, long s) { return Rational(r - 1) - s * level.t(); }

Rational delta_aff(const Level& level, long r, long s) {
  Rational a = r - s * level.t();
  return (a * a - 1) / (4 * level.t());
}

Rational h_n2(const Level& level, long r, long s, const Rational& q) {
  return delta_aff(level, r, s) - level.t() * q * q / 4;
}

bool is_generic(const Level& level, const WeightClass& mu, int r, int s) {
  return !mu.contains(lambda_rs(level, r, s)) &&
         !mu.contains(lambda_rs(level, level.u() - r, level.v() - s));
}

bool is_canonical_rs(const Level& level, int r, int s) {
  return level.v() * r + level.u() * s < level.u() * level.v();
}

namespace {

bool has_s(Sl2Kind kind) { return kind != Sl2Kind::L; }

std::string rs_text(const Sl2Label& x) {
  return has_s(x.kind) ? "(" + std::to_string(x.r) + "," + std::to_string(x.s) + ")"
                       : "(" + std::to_string(x.r) + ")";
}

}  // namespace

void validate(const Level& level, const Sl2Label& label) {
  const long u = level.u();
  const long v = level.v();
  if (label.r < 1 || label.r > u - 1)
    fail(ErrorKind::InvalidArgument, std::string(kind_name(label.kind)) + rs_text(label) +
                                         ": r must lie in [1," + std::to_string(u - 1) + "]");
  if (has_s(label.kind) && (label.s < 1 || label.s > v - 1))
    fail(ErrorKind::InvalidArgument, std::string(kind_name(label.kind)) + rs_text(label) +
                                         ": s must lie in [1," + std::to_string(v - 1) + "]");
  if (label.kind == Sl2Kind::E && !is_generic(level, label.mu, label.r, label.s))
    fail(ErrorKind::NonGeneric, "E[" + to_string(label.mu.rep()) + "]" + rs_text(label) +
                                    " is not generic at level " + level.str());
}

Sl2Label canonicalize(const Level& level, const Sl2Label& label) {
  validate(level, label);
  const int u = static_cast<int>(level.u());
  const int v = static_cast<int>(level.v());
  Sl2Label x = label;
  switch (x.kind) {
    case Sl2Kind::E:
      if (!is_canonical_rs(level, x.r, x.s)) {
        x.r = u - x.r;
        x.s = v - x.s;
      }
      return x;
    case Sl2Kind::Eplus:
    case Sl2Kind::Eminus:
    case Sl2Kind::P:
      return x;
    case Sl2Kind::L:
      if (v == 1) {
        // Integrable level: sigma L_r = L_{u-r}.
        if (x.flow % 2 != 0) x.r = u - x.r;
        x.flow = 0;
        return x;
      }
      if (x.flow > 0) return Sl2Label::Dplus(u - x.r, v - 1, x.flow - 1);
      if (x.flow < 0) return Sl2Label::Dminus(u - x.r, v - 1, x.flow + 1);
      return x;
    case Sl2Kind::Dminus:
      if (x.s <= v - 2) return Sl2Label::Dplus(u - x.r, v - x.s - 1, x.flow - 1);
      if (x.flow == 1) return Sl2Label::L(u - x.r);
      if (x.flow >= 2) return Sl2Label::Dplus(x.r, v - 1, x.flow - 2);
      return x;
    case Sl2Kind::Dplus:
      if (x.s == v - 1) {
        if (x.flow == -1) return Sl2Label::L(u - x.r);
        if (x.flow <= -2) return Sl2Label::Dminus(x.r, v - 1, x.flow + 2);
      }
      return x;
  }
  return x;
}

SimpleModules simple_modules(const Level& level, int flow_min, int flow_max) {
  SimpleModules out;
  const int u = static_cast<int>(level.u());
  const int v = static_cast<int>(level.v());
  std::set<Sl2Label> seen;
  for (int l = flow_min; l <= flow_max; ++l) {
    if (v == 1) {
      for (int r = 1; r < u; ++r) {
        auto c = canonicalize(level, Sl2Label::L(r, l));
        if (seen.insert(c).second) out.discrete.push_back(c);
      }
      continue;
    }
    for (int r = 1; r < u; ++r)
      for (int s = 1; s < v; ++s) {
        auto c = canonicalize(level, Sl2Label::Dplus(r, s, l));
        if (seen.insert(c).second) out.discrete.push_back(c);
      }
    for (int r = 1; r < u; ++r)
      for (int s = 1; s < v; ++s)
        if (is_canonical_rs(level, r, s)) out.e_families.push_back({r, s, l});
  }
  return out;
}

std::string render(const Sl2Label& x) {
  std::string out;
  if (x.flow != 0) out += "sf(" + std::to_string(x.flow) + ").";
  switch (x.kind) {
    case Sl2Kind::L: out += "L"; break;
    case Sl2Kind::Dplus: out += "D+"; break;
    case Sl2Kind::Dminus: out += "D-"; break;
    case Sl2Kind::E: out += "E[" + to_string(x.mu.rep()) + "]"; break;
    case Sl2Kind::Eplus: out += "E+"; break;
    case Sl2Kind::Eminus: out += "E-"; break;
    case Sl2Kind::P: out += "P"; break;
  }
  return out + rs_text(x);
}

std::string render(const Sl2Label& label, const Level& level) { return render(label) + "@" + level.str(); }

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  std::size_t pos() const { return pos_; }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }

  bool accept(std::string_view s) {
    if (!starts_with(s)) return false;
    pos_ += s.size();
    return true;
  }

  void expect(std::string_view s) {
    if (!accept(s)) throw ParseError("expected '" + std::string(s) + "'", pos_);
  }

  int integer() {
    std::size_t start = pos_;
    bool neg = false;
    if (peek() == '-' || peek() == '+') neg = text_[pos_++] == '-';
    if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("expected integer", start);
    long value = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (text_[pos_++] - '0');
      if (value > 1000000000L) throw ParseError("integer too large", start);
    }
    return static_cast<int>(neg ? -value : value);
  }

  // Rational up to the given terminator, not consumed.
  Rational rational_until(char terminator) {
    std::size_t start = pos_;
    std::size_t end = text_.find(terminator, pos_);
    if (end == std::string_view::npos)
      throw ParseError(std::string("expected '") + terminator + "'", text_.size());
    try {
      Rational q = parse_rational(text_.substr(start, end - start));
      pos_ = end;
      return q;
    } catch (const ParseError& e) {
      throw ParseError("malformed rational", start + e.position());
    }
  }

  std::string_view rest() const { return text_.substr(pos_); }
  void skip_to_end() { pos_ = text_.size(); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::pair<int, int> index_pair(Cursor& c) {
  c.expect("(");
  int a = c.integer();
  c.expect(",");
  int b = c.integer();
  c.expect(")");
  return {a, b};
}

}  // namespace

ParsedSl2Label parse_sl2_label_raw(std::string_view text) {
  Cursor c(text);
  ParsedSl2Label out;
  Sl2Label& x = out.label;
  if (c.accept("sf(")) {
    x.flow = c.integer();
    c.expect(").");
  }
  if (c.accept("L")) {
    x.kind = Sl2Kind::L;
    c.expect("(");
    x.r = c.integer();
    c.expect(")");
  } else if (c.accept("D+")) {
    x.kind = Sl2Kind::Dplus;
    std::tie(x.r, x.s) = index_pair(c);
  } else if (c.accept("D-")) {
    x.kind = Sl2Kind::Dminus;
    std::tie(x.r, x.s) = index_pair(c);
  } else if (c.accept("E[")) {
    x.kind = Sl2Kind::E;
    x.mu = WeightClass(c.rational_until(']'));
    c.expect("]");
    std::tie(x.r, x.s) = index_pair(c);
  } else if (c.accept("E+")) {
    x.kind = Sl2Kind::Eplus;
    std::tie(x.r, x.s) = index_pair(c);
  } else if (c.accept("E-")) {
    x.kind = Sl2Kind::Eminus;
    std::tie(x.r, x.s) = index_pair(c);
  } else if (c.accept("P")) {
    x.kind = Sl2Kind::P;
    std::tie(x.r, x.s) = index_pair(c);
  } else {
    throw ParseError("expected one of L, D+, D-, E[, E+, E-, P", c.pos());
  }
  if (c.accept("@")) {
    std::size_t at = c.pos();
    try {
      out.level = Level::parse(c.rest());
    } catch (const ParseError& e) {
      throw ParseError("malformed level", at + e.position());
    }
    c.skip_to_end();
  }
  if (!c.done()) throw ParseError("trailing characters", c.pos());
  return out;
}

Sl2Label parse_sl2_label(std::string_view text, const std::optional<Level>& level) {
  ParsedSl2Label parsed = parse_sl2_label_raw(text);
  if (parsed.level && level && !(*parsed.level == *level))
    fail(ErrorKind::InvalidArgument,
         "label level " + parsed.level->str() + " differs from requested level " + level->str());
  std::optional<Level> lv = parsed.level ? parsed.level : level;
  if (!lv) fail(ErrorKind::InvalidArgument, "no level given for label '" + std::string(text) + "'");
  return canonicalize(*lv, parsed.label);
}

nlohmann::json to_json(const Sl2Label& label, const Level& level) {
  nlohmann::json j;
  j["variant"] = kind_name(label.kind);
  j["r"] = label.r;
  j["s"] = has_s(label.kind) ? nlohmann::json(label.s) : nlohmann::json(nullptr);
  j["mu"] = label.kind == Sl2Kind::E ? nlohmann::json(to_fraction_string(label.mu.rep()))
                                      : nlohmann::json(nullptr);
  j["flow"] = label.flow;
  j["level"] = {{"u", level.u()}, {"v", level.v()}};
  j["text"] = render(label);
  return j;
}

N2Label N2Label::relaxed(const Rational& q, int r, int s, int parity) {
  N2Label x;
  x.q = q;
  x.family = N2Family::Relaxed;
  x.r = r;
  x.s_or_p = s;
  x.parity = parity & 1;
  return x;
}

N2Label N2Label::discrete(const Level& level, int r, int p, int parity) {
  N2Label x;
  x.q = frac(p * level.v(), level.u());
  x.family = N2Family::Discrete;
  x.r = r;
  x.s_or_p = p;
  x.parity = parity & 1;
  return x;
}

bool N2Label::operator==(const N2Label& o) const {
  return q == o.q && family == o.family && r == o.r && s_or_p == o.s_or_p && parity == o.parity;
}

bool N2Label::operator<(const N2Label& o) const {
  if (family != o.family) return family < o.family;
  if (q != o.q) return q < o.q;
  if (r != o.r) return r < o.r;
  if (s_or_p != o.s_or_p) return s_or_p < o.s_or_p;
  return parity < o.parity;
}

void validate(const Level& level, const N2Label& x) {
  const long u = level.u();
  const long v = level.v();
  if (x.parity != 0 && x.parity != 1) fail(ErrorKind::InvalidArgument, "N=2 parity must be 0 or 1");
  if (x.r < 1 || x.r > u - 1) fail(ErrorKind::InvalidArgument, "N=2 label: r out of range");
  if (x.family == N2Family::Relaxed) {
    if (x.s_or_p < 1 || x.s_or_p > v - 1) fail(ErrorKind::InvalidArgument, "N=2 label: s out of range");
    return;
  }
  const int p = x.s_or_p;
  if (p < 1 - x.r || p > x.r - 1) fail(ErrorKind::InvalidArgument, "N=2 label: p out of range");
  if ((p + x.r) % 2 == 0) fail(ErrorKind::InvalidArgument, "N=2 label: p + r must be odd");
  if (x.q != frac(p * v, u)) fail(ErrorKind::InvalidArgument, "N=2 label: q must equal pv/u");
}

N2Label canonicalize(const Level& level, const N2Label& label) {
  validate(level, label);
  N2Label x = label;
  if (x.family == N2Family::Relaxed && !is_canonical_rs(level, x.r, x.s_or_p)) {
    x.r = static_cast<int>(level.u()) - x.r;
    x.s_or_p = static_cast<int>(level.v()) - x.s_or_p;
  }
  return x;
}

std::string render(const N2Label& x) {
  std::string out = x.parity ? "Pi." : "";
  if (x.family == N2Family::Relaxed)
    return out + "NL[" + to_string(x.q) + "](" + std::to_string(x.r) + "," + std::to_string(x.s_or_p) + ")";
  return out + "ND(" + std::to_string(x.r) + "," + std::to_string(x.s_or_p) + ")";
}

N2Label parse_n2_label(std::string_view text, const Level& level) {
  Cursor c(text);
  int parity = c.accept("Pi.") ? 1 : 0;
  N2Label x;
  if (c.accept("NL[")) {
    Rational q = c.rational_until(']');
    c.expect("]");
    auto [r, s] = index_pair(c);
    x = N2Label::relaxed(q, r, s, parity);
  } else if (c.accept("ND")) {
    auto [r, p] = index_pair(c);
    x = N2Label::discrete(level, r, p, parity);
  } else {
    throw ParseError("expected NL[ or ND(", c.pos());
  }
  if (!c.done()) throw ParseError("trailing characters", c.pos());
  return canonicalize(level, x);
}

nlohmann::json to_json(const N2Label& x, const Level& level) {
  nlohmann::json j;
  j["family"] = x.family == N2Family::Relaxed ? "Relaxed" : "Discrete";
  j["q"] = to_fraction_string(x.q);
  j["r"] = x.r;
  if (x.family == N2Family::Relaxed)
    j["s"] = x.s_or_p;
  else
    j["p"] = x.s_or_p;
  j["parity"] = x.parity;
  j["level"] = {{"u", level.u()}, {"v", level.v()}};
  j["text"] = render(x);
  return j;
}

}  // namespace fk
