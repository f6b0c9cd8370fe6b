#pragma once

#include <string>
#include <vector>

#include "gamcal/solver.hpp"

namespace gamcal {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

// Split a comma-separated file into cells (no quoting; LF or CRLF rows).
std::vector<std::vector<std::string>> read_csv(const std::string& path);

// Motion samples as CSV: tau, q_1..q_n, p_1..p_n, H_residual, energy.
void write_motion_csv(const std::string& path, const MotionCurve& curve);
MotionCurve read_motion_csv(const std::string& path, int config_dim);

// Field grid as CSV: x_1..x_D, phi, pi_1..pi_D, nodes in row-major order.
// The reader fills phi and momenta of a grid already shaped by the config
// and validates the stored coordinates against it.
void write_field_csv(const std::string& path, const FieldGrid& grid);
void read_field_csv(const std::string& path, FieldGrid& grid);

// Energy-momentum components as CSV: x_1..x_D, then T_jk row-major.
void write_emt_csv(const std::string& path, const FieldGrid& grid,
                   const EnergyMomentumField& field);

}  // namespace gamcal
