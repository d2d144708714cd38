#include "svf/battery.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include "svf/engine.hpp"
#include "svf/error.hpp"
#include "svf/format.hpp"

namespace svf {

void PropertyResult::record(double slack, double tolerance) {
  ++trials;
  if (!(slack <= tolerance)) ++failures;  // NaN counts as a failure
  worst_slack = std::isnan(slack) ? slack : std::max(worst_slack, slack);
}

void PropertyResult::merge(const PropertyResult& other) {
  trials += other.trials;
  failures += other.failures;
  worst_slack = std::max(worst_slack, other.worst_slack);
}

bool BatteryReport::passed() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return p.failures == 0 && p.trials > 0; });
}

const PropertyResult& BatteryReport::at(const std::string& id) const {
  for (const auto& p : properties) {
    if (p.id == id) return p;
  }
  throw Error(Errc::InvalidArgument, "no property with id " + id);
}

std::string BatteryReport::to_csv() const {
  std::string out = "property,trials,failures,worst_slack\n";
  for (const auto& p : properties) {
    out += p.id + "," + std::to_string(p.trials) + "," + std::to_string(p.failures) + "," + format_real(p.worst_slack) +
           "\n";
  }
  return out;
}

std::string BatteryReport::to_table() const {
  std::ostringstream os;
  os << std::left << std::setw(6) << "id" << std::setw(44) << "property" << std::right << std::setw(8) << "trials"
     << std::setw(10) << "failures" << std::setw(14) << "worst_slack" << "\n";
  for (const auto& p : properties) {
    os << std::left << std::setw(6) << p.id << std::setw(44) << p.description << std::right << std::setw(8)
       << p.trials << std::setw(10) << p.failures << std::setw(14) << std::scientific << std::setprecision(3)
       << p.worst_slack << std::defaultfloat << "\n";
  }
  os << (passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

namespace {

struct PropertyInfo {
  const char* id;
  const char* description;
};

constexpr PropertyInfo kProperties[] = {
    {"1", "s_0(a) = |a|"},
    {"2", "s(alpha a) = |alpha| s(a)"},
    {"3a", "s(ba) <= |b| s(a)"},
    {"3b", "s(ab) <= |b| s(a)"},
    {"4", "|s_g(a) - s_g(b)| <= |a - b|"},
    {"5", "s(a) = s(|a|)"},
    {"6a", "s(a) = s(a*)"},
    {"6b", "s(ua) = s(a) = s(au)"},
    {"7", "s_{g+h}(a+b) <= s_g(a) + s_h(b)"},
    {"8", "s_{g+h}(ab) <= s_g(a) s_h(b)"},
    {"9", "s(f(a)) = f(s(a)), a >= 0"},
    {"10", "0 <= a <= b => s(a) <= s(b)"},
    {"11", "s(a*a) = s(aa*)"},
    {"12", "s_[1](a) = 0"},
    {"13", "closed form = spectral oracle = sampling"},
    {"14", "a*a <= b*b => s(a) <= s(b)"},
};

const std::vector<std::function<double(double)>>& monotone_functions() {
  static const std::vector<std::function<double(double)>> fs = {
      [](double t) { return t * t; },
      [](double t) { return std::sqrt(t); },
      [](double t) { return t / (1.0 + t); },
  };
  return fs;
}

// One trial of every property; returns slacks in kProperties order.
std::vector<double> run_trial(const BatteryOptions& opt, std::uint64_t trial) {
  auto rng = sampling::make_rng(opt.seed, trial);
  const MultiMatrixAlgebra A = sampling::random_algebra(rng, opt.max_blocks, opt.max_size);
  const AlgebraElement a = sampling::random_element(A, rng);
  const AlgebraElement b = sampling::random_element(A, rng);
  const K0Class g = sampling::random_class(A, rng);
  const K0Class h = sampling::random_class(A, rng);
  std::normal_distribution<double> normal(0.0, 1.0);
  const bool zero_alpha = rng() % 16 == 0;
  const double re = normal(rng);
  const double im = normal(rng);
  const std::complex<double> alpha = zero_alpha ? std::complex<double>(0.0) : std::complex<double>(re, im);
  const AlgebraElement u = sampling::random_unitary(A, rng);

  const auto s = [&](const AlgebraElement& x, const K0Class& k) { return svf(A, x, k); };
  const double sa = s(a, g);
  const double sb = s(b, g);
  const double norm_b = element_norm(b);

  std::vector<double> slack;
  slack.push_back(std::abs(s(a, A.zero_class()) - element_norm(a)));
  slack.push_back(std::abs(s(alpha * a, g) - std::abs(alpha) * sa));
  slack.push_back(s(b * a, g) - norm_b * sa);
  slack.push_back(s(a * b, g) - norm_b * sa);
  slack.push_back(std::abs(sa - sb) - element_norm(a - b));
  slack.push_back(std::abs(sa - s(absolute_value(a), g)));
  slack.push_back(std::abs(sa - s(a.adjoint(), g)));
  slack.push_back(std::max(std::abs(s(u * a, g) - sa), std::abs(s(a * u, g) - sa)));
  slack.push_back(s(a + b, g + h) - (sa + s(b, h)));
  slack.push_back(s(a * b, g + h) - sa * s(b, h));

  const AlgebraElement x = sampling::random_positive(A, rng);
  const double sx = s(x, g);
  double worst = 0.0;
  for (const auto& f : monotone_functions()) {
    worst = std::max(worst, std::abs(s(apply_scalar_function(x, f), g) - f(sx)));
  }
  slack.push_back(worst);

  const AlgebraElement c = sampling::random_element(A, rng);
  slack.push_back(sx - s(x + c.adjoint() * c, g));

  slack.push_back(std::abs(s(a.adjoint() * a, g) - s(a * a.adjoint(), g)));
  slack.push_back(s(a, A.unit_class()));

  const double oracle = svf_finite_spectrum(spectral_steps(absolute_value(a)), g);
  const double sampled = svf_sampling_bound(A, a, g, opt.sampling_trials, opt.seed ^ (trial * 0x9e3779b97f4a7c15ULL));
  slack.push_back(std::max({std::abs(sa - oracle), std::abs(sa - sampled), std::abs(oracle - sampled)}));

  // a = w |b| with |w| <= 1 gives a*a = |b| w*w |b| <= b*b.
  const AlgebraElement w = sampling::random_element(A, rng, 1.0);
  slack.push_back(s(w * absolute_value(b), g) - sb);
  return slack;
}

}  // namespace

BatteryReport property_battery(const BatteryOptions& options) {
  if (options.trials < 1) throw Error(Errc::InvalidArgument, "trials must be >= 1");
  if (options.max_blocks < 1 || options.max_size < 1) throw Error(Errc::InvalidArgument, "sizes must be >= 1");
  BatteryReport report;
  for (const auto& info : kProperties) report.properties.push_back({info.id, info.description});
  for (int t = 0; t < options.trials; ++t) {
    const auto slacks = run_trial(options, static_cast<std::uint64_t>(t));
    for (std::size_t i = 0; i < slacks.size(); ++i) report.properties[i].record(slacks[i], options.tolerance);
  }
  return report;
}

}  // namespace svf
