// Times the OpenMP kernels against the serial reference path and checks
// that both produce identical results.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <string>

#include "hodgekit/forms.hpp"
#include "hodgekit/instance.hpp"
#include "hodgekit/matroid.hpp"
#include "hodgekit/parallel.hpp"
#include "hodgekit/tropfan.hpp"

using namespace hk;

namespace {

template <typename F>
double time_ms(F&& body) {
  auto t0 = std::chrono::steady_clock::now();
  body();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

template <typename F, typename R>
void row(const std::string& name, F&& body, R&& same) {
  set_parallel(false);
  const double serial = time_ms(body);
  set_parallel(true);
  const double parallel = time_ms(body);
  std::cout << std::left << std::setw(34) << name << std::right << std::fixed
            << std::setprecision(1) << std::setw(10) << serial << " ms"
            << std::setw(10) << parallel << " ms" << std::setw(9)
            << std::setprecision(2) << (parallel > 0 ? serial / parallel : 0.0)
            << "x   " << (same() ? "identical" : "MISMATCH") << "\n";
}

}  // namespace

int main() {
  std::cout << std::left << std::setw(34) << "kernel" << std::right << std::setw(13)
            << "serial" << std::setw(13) << "openmp" << std::setw(10) << "speedup"
            << "   results\n";

  BergmanFan u45 = bergman(Matroid::uniform(4, 5));

  {
    ValidateResult serial_res, parallel_res;
    row(
        "validate(bergman u45)",
        [&] {
          (parallel_enabled() ? parallel_res : serial_res) = validate(u45.fan);
        },
        [&] { return serial_res.ok == parallel_res.ok; });
  }

  {
    FanLorentzReport serial_res, parallel_res;
    row(
        "lorentzian_fan_check(u45)",
        [&] {
          (parallel_enabled() ? parallel_res : serial_res) =
              lorentzian_fan_check(u45.fan, u45.weight, u45.suggested_ample);
        },
        [&] {
          return serial_res.ok == parallel_res.ok &&
                 serial_res.cones_checked == parallel_res.cones_checked &&
                 serial_res.family_sizes == parallel_res.family_sizes;
        });
  }

  {
    LorentzVerdict serial_res, parallel_res;
    HomogeneousForm det = build_symmetric_torus(4).F().source();
    row(
        "is_lorentzian_orthant(sym det 4)",
        [&] {
          HomogeneousForm g = pullback(det, build_symmetric_torus(4).nef_generators());
          (parallel_enabled() ? parallel_res : serial_res) = is_lorentzian_orthant(g);
        },
        [&] {
          return serial_res.ok == parallel_res.ok &&
                 serial_res.hessians_checked == parallel_res.hessians_checked;
        });
  }

  {
    std::string serial_label, parallel_label;
    row(
        "build_from_fan(bergman u45)",
        [&] {
          LorentzInstance inst =
              build_from_fan(u45.fan, u45.weight, u45.suggested_ample, "u45");
          (parallel_enabled() ? parallel_label : serial_label) =
              inst.label() + "/" + std::to_string(inst.nef_generators().size());
        },
        [&] { return serial_label == parallel_label && !serial_label.empty(); });
  }

  return 0;
}
