#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qagent/learner.hpp"

namespace qagent {

inline constexpr std::string_view kLearningHeader =
    "iter,gamma,delta,gamma_norm,delta_norm,dist_norm,x_bar,p_e_model,overlap,"
    "w_avg_scaled,df_scaled,q_scaled";

/// 17 significant digits, trailing zeros dropped; round-trips exactly. "inf"/"nan" spelled out.
std::string format_double(double x);

std::string learning_csv(const std::vector<LearningRecord>& records);

/// Write to `path.tmp` then rename onto `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Lowercase hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);

}  // namespace qagent
