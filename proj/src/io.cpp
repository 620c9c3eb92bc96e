#include "cqes/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace cqes {

namespace {

using Json = nlohmann::ordered_json;

// Parses a real at the front of `text`, advancing it. Leading '+' allowed.
std::optional<double> take_real(std::string_view& text) {
  std::string_view s = text;
  if (!s.empty() && s.front() == '+') {
    s.remove_prefix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc()) {
    return std::nullopt;
  }
  text.remove_prefix(static_cast<std::size_t>(ptr - text.data()));
  return value;
}

// Imaginary part written as "<sign><digits>i", "<sign>i" or "i".
std::optional<double> take_imaginary(std::string_view text) {
  if (text.empty() || text.back() != 'i') {
    return std::nullopt;
  }
  text.remove_suffix(1);
  if (text.empty() || text == "+") {
    return 1.0;
  }
  if (text == "-") {
    return -1.0;
  }
  const auto value = take_real(text);
  if (!value || !text.empty()) {
    return std::nullopt;
  }
  return value;
}

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) {
    return "nan";
  }
  if (std::isinf(x)) {
    return x > 0 ? "inf" : "-inf";
  }
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) {
    throw std::runtime_error("number formatting failed");
  }
  return std::string(buf, ptr);
}

Complex parse_complex(std::string_view text) {
  const std::string_view original = text;
  auto fail = [&]() -> Complex {
    throw std::invalid_argument("not a complex literal of the form a+bi: '" +
                                std::string(original) + "'");
  };
  if (text.empty()) {
    return fail();
  }
  if (auto im = take_imaginary(text)) {
    return {0.0, *im};
  }
  const auto re = take_real(text);
  if (!re) {
    return fail();
  }
  if (text.empty()) {
    return {*re, 0.0};
  }
  if (text.front() != '+' && text.front() != '-') {
    return fail();
  }
  const auto im = take_imaginary(text);
  if (!im) {
    return fail();
  }
  return {*re, *im};
}

std::string format_complex(Complex z) {
  const double im = z.imag();
  std::string out = format_number(z.real());
  if (!std::signbit(im) || std::isnan(im)) {
    out += '+';
  }
  return out + format_number(im) + 'i';
}

WellIndex parse_well(std::string_view text) {
  const auto colon = text.find(':');
  auto fail = [&]() -> WellIndex {
    throw std::invalid_argument("well must be written side:n, e.g. left:-3, got '" +
                                std::string(text) + "'");
  };
  if (colon == std::string_view::npos) {
    return fail();
  }
  const std::string_view side = text.substr(0, colon);
  std::string_view n_text = text.substr(colon + 1);
  if (!n_text.empty() && n_text.front() == '+') {
    n_text.remove_prefix(1);
  }
  int n = 0;
  const auto [ptr, ec] = std::from_chars(n_text.data(), n_text.data() + n_text.size(), n);
  if (ec != std::errc() || ptr != n_text.data() + n_text.size() || n_text.empty()) {
    return fail();
  }
  if (side == "left") {
    return {Side::Left, n};
  }
  if (side == "right") {
    return {Side::Right, n};
  }
  return fail();
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,re_z,im_z,re_p,im_p,e1_err,e2_err\n";
  if (traj.samples.empty()) {
    return;
  }
  const EnergyComponents e0 =
      energy_components(traj.samples.front().z, traj.samples.front().p, traj.params);
  for (const PhaseState& s : traj.samples) {
    const EnergyComponents e = energy_components(s.z, s.p, traj.params);
    os << format_number(s.t) << ',' << format_number(s.z.real()) << ','
       << format_number(s.z.imag()) << ',' << format_number(s.p.real()) << ','
       << format_number(s.p.imag()) << ',' << format_number(e.e1 - e0.e1) << ','
       << format_number(e.e2 - e0.e2) << '\n';
  }
}

std::string crossing_json(const CrossingEvent& e) {
  Json j;
  j["type"] = "crossing";
  j["t"] = number(e.t_cross);
  j["y"] = number(e.y_at_cross);
  j["dir"] = to_string(e.direction);
  return j.dump();
}

std::string classification_json(const std::optional<OrbitClass>& cls,
                                const std::string& missing_kind) {
  Json j;
  j["type"] = "classification";
  if (!cls) {
    j["kind"] = missing_kind;
    return j.dump();
  }
  j["kind"] = to_string(cls->kind);
  if (const auto* c = std::get_if<ClosedDetail>(&cls->detail)) {
    j["period"] = number(c->period);
    j["anchor"] = to_string(c->anchor);
  } else if (const auto* o = std::get_if<EscapeDetail>(&cls->detail)) {
    j["side"] = to_string(o->side);
  } else if (const auto* t = std::get_if<TunnelingDetail>(&cls->detail)) {
    j["left"] = to_string(t->wells.left);
    j["right"] = to_string(t->wells.right);
  }
  return j.dump();
}

void write_events_jsonl(std::ostream& os, std::span<const CrossingEvent> crossings,
                        const std::optional<OrbitClass>& cls,
                        const std::string& missing_kind) {
  for (const CrossingEvent& e : crossings) {
    os << crossing_json(e) << '\n';
  }
  os << classification_json(cls, missing_kind) << '\n';
}

}  // namespace cqes
