#include "optlev/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <iterator>
#include <map>
#include <sstream>

namespace optlev {

namespace {

// ---------------------------------------------------------------------------
// Key tables. Declaration order doubles as the "first missing key" order and
// the serialization order.

struct KeyInfo {
  const char* name;
  bool required;
};

const char* const kSections[] = {"mirror", "laser", "cavity.lower", "cavity.upper",
                                 "environment"};

const KeyInfo kMirrorKeys[] = {
    {"radius", true},
    {"aspect_ratio", true},
    {"roc", true},
    {"hr_side", false},
    {"absorption", false},
    {"internal_mode_freq", false},
    {"substrate_young_modulus", true},
    {"substrate_poisson_ratio", true},
    {"substrate_loss_angle", true},
    {"substrate_refractive_index", true},
    {"substrate_density", true},
    {"coating_high_refractive_index", true},
    {"coating_high_young_modulus", true},
    {"coating_high_poisson_ratio", true},
    {"coating_high_loss_angle", true},
    {"coating_high_density", false},
    {"coating_high_thickness", true},
    {"coating_high_layers", true},
    {"coating_low_refractive_index", true},
    {"coating_low_young_modulus", true},
    {"coating_low_poisson_ratio", true},
    {"coating_low_loss_angle", true},
    {"coating_low_density", false},
    {"coating_low_thickness", true},
    {"coating_low_layers", true},
};

const KeyInfo kLaserKeys[] = {
    {"wavelength", true},
    {"freq_noise_asd", true},
    {"rin_asd", false},
};

const KeyInfo kCavityKeys[] = {
    {"length", true},         {"fixed_mirror_roc", true}, {"coc_distance", true},
    {"finesse", true},        {"input_power", true},      {"detuning_norm", true},
    {"spot_radius", false},
};

const KeyInfo kEnvironmentKeys[] = {
    {"temperature", true},        {"pressure", true},
    {"gas_molecule_mass", false}, {"gas_shape_constant", false},
    {"seismic_coefficient", false}, {"suspension_resonance", false},
};

template <size_t N>
const KeyInfo* find_key(const KeyInfo (&keys)[N], const std::string& name) {
  for (const KeyInfo& k : keys)
    if (name == k.name) return &k;
  return nullptr;
}

struct RawValue {
  std::string text;
  int line = 0;
  int column = 0;
};

struct RawDocument {
  // keyed "section/key"
  std::map<std::string, RawValue> values;
};

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

RawDocument tokenize(const std::string& text) {
  RawDocument doc;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']')
        throw ParseError("unterminated section header", lineno,
                         static_cast<int>(line.find('[')) + 1);
      section = trim(body.substr(1, body.size() - 2));
      bool known = false;
      for (const char* s : kSections) known = known || section == s;
      if (!known)
        throw ParseError("unknown section [" + section + "]", lineno, 1);
      continue;
    }
    size_t eq = body.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value'", lineno,
                       static_cast<int>(line.find_first_not_of(" \t")) + 1);
    std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (key.empty() || !std::all_of(key.begin(), key.end(), valid_key_char))
      throw ParseError("malformed key '" + key + "'", lineno, 1);
    if (value.empty())
      throw ParseError("missing value for key '" + key + "'", lineno,
                       static_cast<int>(line.find('=')) + 2);
    if (section.empty())
      throw ParseError("key '" + key + "' outside any section", lineno, 1);

    const KeyInfo* info = nullptr;
    if (section == "mirror") info = find_key(kMirrorKeys, key);
    else if (section == "laser") info = find_key(kLaserKeys, key);
    else if (section == "environment") info = find_key(kEnvironmentKeys, key);
    else info = find_key(kCavityKeys, key);
    if (!info)
      throw ParseError("unknown key '" + key + "' in [" + section + "]", lineno, 1);

    std::string path = section + "/" + key;
    if (doc.values.count(path))
      throw ParseError("duplicate key '" + key + "' in [" + section + "]", lineno, 1);
    int col = static_cast<int>(line.find(key)) + 1;
    doc.values[path] = RawValue{value, lineno, col};
  }
  return doc;
}

// Reads a plain SI number; any trailing text (a unit suffix, stray token)
// is an error.
double parse_number(const RawValue& raw, const std::string& path) {
  const char* begin = raw.text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin)
    throw ParseError("non-numeric value for " + path, raw.line, raw.column);
  while (*end == ' ' || *end == '\t') ++end;
  if (*end != '\0')
    throw ParseError("trailing text after number for " + path +
                         " (values must be plain SI numbers, no unit suffix)",
                     raw.line, raw.column);
  if (!std::isfinite(v))
    throw ParseError("non-finite value for " + path, raw.line, raw.column);
  return v;
}

class Reader {
 public:
  explicit Reader(RawDocument doc) : doc_(std::move(doc)) {}

  bool has(const std::string& section, const std::string& key) const {
    return doc_.values.count(section + "/" + key) != 0;
  }
  double number(const std::string& section, const std::string& key) const {
    return parse_number(raw(section, key), section + "." + key);
  }
  double number_or(const std::string& section, const std::string& key,
                   double fallback) const {
    return has(section, key) ? number(section, key) : fallback;
  }
  std::optional<double> optional_number(const std::string& section,
                                        const std::string& key) const {
    if (!has(section, key)) return std::nullopt;
    return number(section, key);
  }
  int count(const std::string& section, const std::string& key) const {
    const RawValue& r = raw(section, key);
    double v = parse_number(r, section + "." + key);
    if (v < 1 || v != std::floor(v) || v > 1e6)
      throw ParseError(section + "." + key + " must be a positive integer count",
                       r.line, r.column);
    return static_cast<int>(v);
  }
  std::string token(const std::string& section, const std::string& key) const {
    return raw(section, key).text;
  }
  const RawValue& raw(const std::string& section, const std::string& key) const {
    auto it = doc_.values.find(section + "/" + key);
    if (it == doc_.values.end())
      throw ParseError("missing required key " + section + "." + key, 0, 0);
    return it->second;
  }

  void check_required() const {
    auto scan = [&](const std::string& section, const KeyInfo* keys, size_t n) {
      for (size_t i = 0; i < n; ++i)
        if (keys[i].required && !has(section, keys[i].name))
          throw ParseError("missing required key " + section + "." + keys[i].name, 0, 0);
    };
    scan("mirror", kMirrorKeys, std::size(kMirrorKeys));
    scan("laser", kLaserKeys, std::size(kLaserKeys));
    scan("cavity.lower", kCavityKeys, std::size(kCavityKeys));
    scan("cavity.upper", kCavityKeys, std::size(kCavityKeys));
    scan("environment", kEnvironmentKeys, std::size(kEnvironmentKeys));
  }

 private:
  RawDocument doc_;
};

MaterialProps read_material(const Reader& r, const std::string& section,
                            const std::string& prefix, double default_density) {
  MaterialProps m;
  m.young_modulus = r.number(section, prefix + "young_modulus");
  m.poisson_ratio = r.number(section, prefix + "poisson_ratio");
  m.loss_angle = r.number(section, prefix + "loss_angle");
  m.refractive_index = r.number(section, prefix + "refractive_index");
  m.density = r.number_or(section, prefix + "density", default_density);
  return m;
}

CavitySpec read_cavity(const Reader& r, CavityLabel label) {
  const std::string section =
      label == CavityLabel::lower ? "cavity.lower" : "cavity.upper";
  CavitySpec c;
  c.label = label;
  c.length = r.number(section, "length");
  c.fixed_mirror_roc = r.number(section, "fixed_mirror_roc");
  c.coc_distance = r.number(section, "coc_distance");
  c.finesse = r.number(section, "finesse");
  c.input_power = r.number(section, "input_power");
  c.detuning_norm = r.number(section, "detuning_norm");
  c.spot_radius = r.optional_number(section, "spot_radius");
  return c;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_material(std::ostringstream& out, const std::string& prefix,
                    const MaterialProps& m) {
  out << prefix << "young_modulus = " << format_double(m.young_modulus) << "\n";
  out << prefix << "poisson_ratio = " << format_double(m.poisson_ratio) << "\n";
  out << prefix << "loss_angle = " << format_double(m.loss_angle) << "\n";
  out << prefix << "refractive_index = " << format_double(m.refractive_index) << "\n";
  out << prefix << "density = " << format_double(m.density) << "\n";
}

// Recovers the two alternating layer groups of a stack (the only form the
// text format can express). Throws if the stack is not a two-material
// alternation.
struct LayerGroups {
  CoatingLayer high, low;
  int high_count = 0, low_count = 0;
};

LayerGroups split_groups(const CoatingStack& stack) {
  if (stack.layers.empty())
    throw std::invalid_argument("cannot serialize an empty coating stack");
  LayerGroups g;
  g.high = stack.layers[0];
  bool have_low = false;
  for (size_t i = 0; i < stack.layers.size(); ++i) {
    const CoatingLayer& l = stack.layers[i];
    if (l == g.high && i % 2 == 0) {
      ++g.high_count;
    } else if (i % 2 == 1) {
      if (!have_low) {
        g.low = l;
        have_low = true;
      }
      if (!(l == g.low))
        throw std::invalid_argument(
            "only two-material alternating stacks are serializable");
      ++g.low_count;
    } else {
      throw std::invalid_argument(
          "only two-material alternating stacks are serializable");
    }
  }
  if (!have_low) {
    // single-material stack: describe it as one high layer group, zero low
    g.low = g.high;
    g.low_count = 0;
  }
  return g;
}

void check_material(std::vector<Violation>& out, const std::string& prefix,
                    const MaterialProps& m) {
  if (!(m.young_modulus > 0))
    out.push_back({prefix + ".young_modulus.positive",
                   prefix + " Young's modulus must be > 0"});
  if (!(m.poisson_ratio >= 0 && m.poisson_ratio < 0.5))
    out.push_back({prefix + ".poisson_ratio.range",
                   prefix + " Poisson ratio must be in [0, 0.5)"});
  if (!(m.loss_angle >= 0))
    out.push_back({prefix + ".loss_angle.nonnegative",
                   prefix + " loss angle must be >= 0"});
  if (!(m.refractive_index >= 1))
    out.push_back({prefix + ".refractive_index.range",
                   prefix + " refractive index must be >= 1"});
  if (!(m.density > 0))
    out.push_back({prefix + ".density.positive", prefix + " density must be > 0"});
}

void check_cavity(std::vector<Violation>& out, const std::string& prefix,
                  const CavitySpec& c) {
  if (!(c.length > 0))
    out.push_back({prefix + ".length.positive", prefix + " length must be > 0"});
  if (!(c.fixed_mirror_roc > 0))
    out.push_back({prefix + ".fixed_mirror_roc.positive",
                   prefix + " fixed-mirror ROC must be > 0 (concave toward cavity)"});
  if (!(c.coc_distance > 0))
    out.push_back({prefix + ".coc_distance.positive",
                   prefix + " center-of-curvature distance must be > 0"});
  if (!(c.finesse > 0))
    out.push_back({prefix + ".finesse.positive", prefix + " finesse must be > 0"});
  if (!(c.input_power > 0))
    out.push_back({prefix + ".input_power.positive",
                   prefix + " input power must be > 0"});
  if (!(std::abs(c.detuning_norm) < 1))
    out.push_back({prefix + ".detuning_norm.range",
                   prefix + " normalized detuning must satisfy |d| < 1"});
  if (c.spot_radius && !(*c.spot_radius > 0))
    out.push_back({prefix + ".spot_radius.positive",
                   prefix + " spot radius override must be > 0"});
}

}  // namespace

CoatingStack make_alternating_stack(const MaterialProps& high, double high_thickness,
                                    int high_layers, const MaterialProps& low,
                                    double low_thickness, int low_layers,
                                    const MaterialProps& substrate) {
  if (high_layers < 0 || low_layers < 0 || high_layers + low_layers == 0)
    throw std::invalid_argument("coating stack needs at least one layer");
  if (std::abs(high_layers - low_layers) > 1)
    throw std::invalid_argument(
        "coating layer counts must interleave (differ by at most 1)");
  CoatingStack stack;
  stack.substrate = substrate;
  CoatingLayer h{high, high_thickness};
  CoatingLayer l{low, low_thickness};
  bool start_high = high_layers >= low_layers;
  int nh = high_layers, nl = low_layers;
  bool take_high = start_high;
  while (nh > 0 || nl > 0) {
    if (take_high && nh > 0) {
      stack.layers.push_back(h);
      --nh;
    } else if (!take_high && nl > 0) {
      stack.layers.push_back(l);
      --nl;
    }
    take_high = !take_high;
  }
  return stack;
}

SystemConfig parse_config(const std::string& text) {
  Reader r(tokenize(text));
  r.check_required();

  SystemConfig cfg;

  MirrorSpec& m = cfg.mirror;
  m.radius = r.number("mirror", "radius");
  m.aspect_ratio = r.number("mirror", "aspect_ratio");
  m.roc = r.number("mirror", "roc");
  if (r.has("mirror", "hr_side")) {
    std::string side = r.token("mirror", "hr_side");
    if (side == "lower") m.hr_side = HrSide::lower;
    else if (side == "upper") m.hr_side = HrSide::upper;
    else {
      const RawValue& raw = r.raw("mirror", "hr_side");
      throw ParseError("mirror.hr_side must be 'lower' or 'upper'", raw.line,
                       raw.column);
    }
  }
  m.absorption = r.number_or("mirror", "absorption", m.absorption);
  m.internal_mode_freq =
      r.number_or("mirror", "internal_mode_freq", m.internal_mode_freq);

  MaterialProps substrate = read_material(r, "mirror", "substrate_", 2200.0);
  MaterialProps high = read_material(r, "mirror", "coating_high_", 6850.0);
  MaterialProps low = read_material(r, "mirror", "coating_low_", 2200.0);
  double high_t = r.number("mirror", "coating_high_thickness");
  double low_t = r.number("mirror", "coating_low_thickness");
  int high_n = r.count("mirror", "coating_high_layers");
  int low_n = r.count("mirror", "coating_low_layers");
  try {
    m.coating =
        make_alternating_stack(high, high_t, high_n, low, low_t, low_n, substrate);
  } catch (const std::invalid_argument& e) {
    const RawValue& raw = r.raw("mirror", "coating_high_layers");
    throw ParseError(e.what(), raw.line, raw.column);
  }

  cfg.laser.wavelength = r.number("laser", "wavelength");
  cfg.laser.freq_noise_asd = r.number("laser", "freq_noise_asd");
  cfg.laser.rin_asd = r.optional_number("laser", "rin_asd");

  cfg.lower = read_cavity(r, CavityLabel::lower);
  cfg.upper = read_cavity(r, CavityLabel::upper);

  Environment& e = cfg.environment;
  e.temperature = r.number("environment", "temperature");
  e.pressure = r.number("environment", "pressure");
  e.gas_molecule_mass =
      r.number_or("environment", "gas_molecule_mass", e.gas_molecule_mass);
  e.gas_shape_constant =
      r.number_or("environment", "gas_shape_constant", e.gas_shape_constant);
  e.seismic_coefficient =
      r.number_or("environment", "seismic_coefficient", e.seismic_coefficient);
  e.suspension_resonance =
      r.number_or("environment", "suspension_resonance", e.suspension_resonance);

  return cfg;
}

std::string serialize_config(const SystemConfig& config) {
  std::ostringstream out;
  const MirrorSpec& m = config.mirror;
  LayerGroups groups = split_groups(m.coating);

  out << "[mirror]\n";
  out << "radius = " << format_double(m.radius) << "\n";
  out << "aspect_ratio = " << format_double(m.aspect_ratio) << "\n";
  out << "roc = " << format_double(m.roc) << "\n";
  out << "hr_side = " << (m.hr_side == HrSide::lower ? "lower" : "upper") << "\n";
  out << "absorption = " << format_double(m.absorption) << "\n";
  out << "internal_mode_freq = " << format_double(m.internal_mode_freq) << "\n";
  write_material(out, "substrate_", m.coating.substrate);
  write_material(out, "coating_high_", groups.high.material);
  out << "coating_high_thickness = " << format_double(groups.high.thickness) << "\n";
  out << "coating_high_layers = " << groups.high_count << "\n";
  write_material(out, "coating_low_", groups.low.material);
  out << "coating_low_thickness = " << format_double(groups.low.thickness) << "\n";
  out << "coating_low_layers = " << groups.low_count << "\n";

  out << "\n[laser]\n";
  out << "wavelength = " << format_double(config.laser.wavelength) << "\n";
  out << "freq_noise_asd = " << format_double(config.laser.freq_noise_asd) << "\n";
  if (config.laser.rin_asd)
    out << "rin_asd = " << format_double(*config.laser.rin_asd) << "\n";

  for (const CavitySpec* c : {&config.lower, &config.upper}) {
    out << "\n[" << (c->label == CavityLabel::lower ? "cavity.lower" : "cavity.upper")
        << "]\n";
    out << "length = " << format_double(c->length) << "\n";
    out << "fixed_mirror_roc = " << format_double(c->fixed_mirror_roc) << "\n";
    out << "coc_distance = " << format_double(c->coc_distance) << "\n";
    out << "finesse = " << format_double(c->finesse) << "\n";
    out << "input_power = " << format_double(c->input_power) << "\n";
    out << "detuning_norm = " << format_double(c->detuning_norm) << "\n";
    if (c->spot_radius)
      out << "spot_radius = " << format_double(*c->spot_radius) << "\n";
  }

  const Environment& e = config.environment;
  out << "\n[environment]\n";
  out << "temperature = " << format_double(e.temperature) << "\n";
  out << "pressure = " << format_double(e.pressure) << "\n";
  out << "gas_molecule_mass = " << format_double(e.gas_molecule_mass) << "\n";
  out << "gas_shape_constant = " << format_double(e.gas_shape_constant) << "\n";
  out << "seismic_coefficient = " << format_double(e.seismic_coefficient) << "\n";
  out << "suspension_resonance = " << format_double(e.suspension_resonance) << "\n";
  return out.str();
}

std::vector<Violation> validate(const SystemConfig& config) {
  std::vector<Violation> v;
  const MirrorSpec& m = config.mirror;

  if (!(m.radius > 0))
    v.push_back({"mirror.radius.positive", "mirror radius must be > 0"});
  if (!(m.aspect_ratio > 0))
    v.push_back({"mirror.aspect_ratio.positive", "mirror aspect ratio must be > 0"});
  if (!(m.roc > 0))
    v.push_back({"mirror.roc.convex", "mirror must be convex downward (R > 0)"});
  if (m.hr_side != HrSide::lower)
    v.push_back({"mirror.hr_side.supported",
                 "HR coating must face the lower cavity (hr_side = lower)"});
  if (!(m.absorption >= 0))
    v.push_back({"mirror.absorption.nonnegative",
                 "mirror coating absorption must be >= 0"});
  if (!(m.internal_mode_freq > 0))
    v.push_back({"mirror.internal_mode_freq.positive",
                 "internal mode frequency must be > 0"});

  check_material(v, "mirror.substrate", m.coating.substrate);
  if (m.coating.layers.empty()) {
    v.push_back({"mirror.coating.nonempty", "coating stack must have >= 1 layer"});
  } else {
    // Distinct materials only (a 13-layer stack has two of them).
    std::vector<MaterialProps> seen;
    for (size_t i = 0; i < m.coating.layers.size(); ++i) {
      const CoatingLayer& layer = m.coating.layers[i];
      if (!(layer.thickness > 0))
        v.push_back({"mirror.coating.layer" + std::to_string(i) + ".thickness.positive",
                     "coating layer " + std::to_string(i) + " thickness must be > 0"});
      bool known = false;
      for (const MaterialProps& s : seen) known = known || s == layer.material;
      if (!known) {
        check_material(v, "mirror.coating.material" + std::to_string(seen.size()),
                       layer.material);
        seen.push_back(layer.material);
      }
    }
  }

  if (!(config.laser.wavelength > 0))
    v.push_back({"laser.wavelength.positive", "laser wavelength must be > 0"});
  if (!(config.laser.freq_noise_asd >= 0))
    v.push_back({"laser.freq_noise_asd.nonnegative",
                 "laser frequency noise ASD must be >= 0"});
  if (config.laser.rin_asd && !(*config.laser.rin_asd >= 0))
    v.push_back({"laser.rin_asd.nonnegative", "laser RIN ASD must be >= 0"});

  check_cavity(v, "cavity.lower", config.lower);
  check_cavity(v, "cavity.upper", config.upper);
  if (config.lower.label != CavityLabel::lower)
    v.push_back({"cavity.lower.label", "lower cavity must be labeled lower"});
  if (config.upper.label != CavityLabel::upper)
    v.push_back({"cavity.upper.label", "upper cavity must be labeled upper"});
  if (!(config.lower.detuning_norm * config.upper.detuning_norm < 0))
    v.push_back({"system.detunings.opposite",
                 "detunings must have opposite signs (one cavity red, one blue)"});

  const Environment& e = config.environment;
  if (!(e.temperature > 0))
    v.push_back({"environment.temperature.positive", "temperature must be > 0"});
  if (!(e.pressure >= 0))
    v.push_back({"environment.pressure.nonnegative", "gas pressure must be >= 0"});
  if (!(e.gas_molecule_mass > 0))
    v.push_back({"environment.gas_molecule_mass.positive",
                 "gas molecular mass must be > 0"});
  if (!(e.gas_shape_constant > 0))
    v.push_back({"environment.gas_shape_constant.positive",
                 "gas shape constant must be > 0"});
  if (!(e.seismic_coefficient >= 0))
    v.push_back({"environment.seismic_coefficient.nonnegative",
                 "seismic coefficient must be >= 0"});
  if (!(e.suspension_resonance > 0))
    v.push_back({"environment.suspension_resonance.positive",
                 "suspension resonance must be > 0"});
  return v;
}

double mirror_mass(const MirrorSpec& mirror) {
  const double r = mirror.radius;
  const double h = 2.0 * r / mirror.aspect_ratio;  // thickness from aspect ratio
  const double pi = 3.14159265358979323846;
  return mirror.coating.substrate.density * pi * r * r * h;
}

const std::string& bundled_table1() {
  static const std::string text =
      "# Reference design: a 0.2 mg convex mirror levitated between two\n"
      "# vertically stacked Fabry-Perot cavities (blue-detuned lower cavity,\n"
      "# red-detuned upper cavity). All values are SI.\n"
      "\n"
      "[mirror]\n"
      "radius = 0.35e-3\n"
      "aspect_ratio = 3\n"
      "roc = 30e-3\n"
      "hr_side = lower\n"
      "absorption = 0.34e-6\n"
      "internal_mode_freq = 3.1e6\n"
      "substrate_young_modulus = 73e9\n"
      "substrate_poisson_ratio = 0.17\n"
      "substrate_loss_angle = 1e-6\n"
      "substrate_refractive_index = 1.45\n"
      "substrate_density = 2200\n"
      "coating_high_refractive_index = 2.07\n"
      "coating_high_young_modulus = 140e9\n"
      "coating_high_poisson_ratio = 0.28\n"
      "coating_high_loss_angle = 2e-4\n"
      "coating_high_density = 6850\n"
      "coating_high_thickness = 91e-9\n"
      "coating_high_layers = 7\n"
      "coating_low_refractive_index = 1.45\n"
      "coating_low_young_modulus = 73e9\n"
      "coating_low_poisson_ratio = 0.17\n"
      "coating_low_loss_angle = 5e-5\n"
      "coating_low_density = 2200\n"
      "coating_low_thickness = 237e-9\n"
      "coating_low_layers = 6\n"
      "\n"
      "[laser]\n"
      "wavelength = 1.064e-6\n"
      "freq_noise_asd = 1e-4\n"
      "\n"
      "[cavity.lower]\n"
      "length = 95e-3\n"
      "fixed_mirror_roc = 120e-3\n"
      "coc_distance = 5.0e-3\n"
      "finesse = 100\n"
      "input_power = 13\n"
      "detuning_norm = -0.005\n"
      "spot_radius = 0.14e-3\n"
      "\n"
      "[cavity.upper]\n"
      "length = 50e-3\n"
      "fixed_mirror_roc = 30e-3\n"
      "coc_distance = 1.3e-3\n"
      "finesse = 100\n"
      "input_power = 4\n"
      "detuning_norm = 0.018\n"
      "spot_radius = 0.19e-3\n"
      "\n"
      "[environment]\n"
      "temperature = 300\n"
      "pressure = 1e-5\n"
      "gas_molecule_mass = 4.81e-26\n"
      "gas_shape_constant = 1\n"
      "seismic_coefficient = 1e-7\n"
      "suspension_resonance = 1\n";
  return text;
}

}  // namespace optlev
