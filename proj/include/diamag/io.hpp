#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "diamag/causality.hpp"
#include "diamag/grid.hpp"
#include "diamag/model.hpp"

// Model file format (JSON) and the CSV schemas emitted by the CLI.
// Numbers are printed with 17 significant digits so that re-reading an
// emitted file and re-emitting it is byte-identical.

namespace diamag {

// {"eta": 0.5, "transitions": [{"omega_eg": .., "gamma_e": .., "delta_edip": ..,
//  "delta_mdip": .., "delta_dia": .., "delta_quad": .., "delta_oct": ..}, ...]}
// Missing strength keys default to 0; "eta" defaults to 0.5. The parsed model
// is validated before being returned; std::invalid_argument on parse or
// validation failure.
MediumModel parse_model_json(const std::string& text);
MediumModel load_model_file(const std::filesystem::path& path);
std::string model_to_json(const MediumModel& model);

// "omega,re_eps,im_eps,re_mu,im_mu,re_chi,im_chi,im_epsmu", ascending omega.
inline constexpr const char* kSpectrumCsvHeader =
    "omega,re_eps,im_eps,re_mu,im_mu,re_chi,im_chi,im_epsmu";

using SpectrumRow = std::array<double, 8>;

std::vector<SpectrumRow> tabulate_spectrum(const MediumModel& model,
                                           const FrequencyGrid& grid);
void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumRow>& rows);
std::vector<SpectrumRow> read_spectrum_csv(std::istream& in);

// "t,g"
void write_kernel_csv(std::ostream& out, const CausalKernel& kernel);

// "re_omega,im_omega,re_residue,im_residue"
void write_poles_csv(std::ostream& out, const std::vector<Pole>& poles);

// 17-significant-digit shortest-round-trip formatting used by all CSV output.
std::string format_double(double value);

}  // namespace diamag
