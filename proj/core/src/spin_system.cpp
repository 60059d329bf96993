#include "qclone/spin_system.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qclone {

double SpinSystem::j_between(int k, int l) const {
  if (k > l) std::swap(k, l);
  if (k == 0 && l == 1) return j_pa_hz;
  if (k == 0 && l == 2) return j_pb_hz;
  if (k == 1 && l == 2) return j_ab_hz;
  throw std::invalid_argument("SpinSystem: bad spin pair");
}

void SpinSystem::validate() const {
  for (int k = 0; k < 3; ++k) {
    if (t1_s[k] <= 0.0) throw std::invalid_argument("SpinSystem: T1 must be positive");
    if (t2_s[k] <= 0.0) throw std::invalid_argument("SpinSystem: T2 must be positive");
  }
  if (freq_p_mhz <= 0.0 || freq_h_mhz <= 0.0)
    throw std::invalid_argument("SpinSystem: transmitter frequencies must be positive");
  if (offset_hz[1] <= offset_hz[2])
    throw std::invalid_argument("SpinSystem: expected nu_A > nu_B");
}

SpinSystem load_spin_system(const std::string& path,
                            std::map<std::string, double>* extra_keys) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spin system file: " + path);
  std::map<std::string, double> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string key;
    double value;
    char eq;
    std::istringstream ss(line);
    if (!(ss >> key)) continue;  // blank
    if (!(ss >> eq >> value) || eq != '=')
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected 'key = value', got '" + line + "'");
    kv[key] = value;
  }
  SpinSystem sys;
  auto take = [&](const std::string& key, double& field) {
    auto it = kv.find(key);
    if (it != kv.end()) {
      field = it->second;
      kv.erase(it);
    }
  };
  take("nu_P", sys.offset_hz[0]);
  take("nu_A", sys.offset_hz[1]);
  take("nu_B", sys.offset_hz[2]);
  take("J_PA", sys.j_pa_hz);
  take("J_PB", sys.j_pb_hz);
  take("J_AB", sys.j_ab_hz);
  take("T1_P", sys.t1_s[0]);
  take("T1_A", sys.t1_s[1]);
  take("T1_B", sys.t1_s[2]);
  take("T2_P", sys.t2_s[0]);
  take("T2_A", sys.t2_s[1]);
  take("T2_B", sys.t2_s[2]);
  take("freq_P_MHz", sys.freq_p_mhz);
  take("freq_H_MHz", sys.freq_h_mhz);
  if (!kv.empty()) {
    if (!extra_keys)
      throw std::runtime_error(path + ": unknown key '" + kv.begin()->first + "'");
    *extra_keys = std::move(kv);
  }
  sys.validate();
  return sys;
}

void save_spin_system(const SpinSystem& sys, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write spin system file: " + path);
  out.precision(10);
  out << "# Three-spin system parameters (Hz, s, MHz)\n";
  out << "nu_P = " << sys.offset_hz[0] << "\n";
  out << "nu_A = " << sys.offset_hz[1] << "\n";
  out << "nu_B = " << sys.offset_hz[2] << "\n";
  out << "J_PA = " << sys.j_pa_hz << "\n";
  out << "J_PB = " << sys.j_pb_hz << "\n";
  out << "J_AB = " << sys.j_ab_hz << "\n";
  out << "T1_P = " << sys.t1_s[0] << "\n";
  out << "T1_A = " << sys.t1_s[1] << "\n";
  out << "T1_B = " << sys.t1_s[2] << "\n";
  out << "T2_P = " << sys.t2_s[0] << "\n";
  out << "T2_A = " << sys.t2_s[1] << "\n";
  out << "T2_B = " << sys.t2_s[2] << "\n";
  out << "freq_P_MHz = " << sys.freq_p_mhz << "\n";
  out << "freq_H_MHz = " << sys.freq_h_mhz << "\n";
}

}  // namespace qclone
