#pragma once

#include "cubepack/certificate.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cubepack::io {

/// Malformed certificate or config text. `location` is a JSON path such as
/// "placements[12].lo[1]" or "byte 1043".
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string location, const std::string& message)
        : std::runtime_error(location + ": " + message), location(std::move(location)) {}
    std::string location;
};

inline constexpr int kCertificateVersion = 1;

/// JSON text with one placement, free brick and stats record per line.
/// decode(encode(c)) == c and encode(decode(s)) == s for encoder output.
std::string encode(const Certificate& cert);
Certificate decode(std::string_view text);

void save(const Certificate& cert, const std::filesystem::path& path);
Certificate load(const std::filesystem::path& path);

/// Config as a single JSON object (same shape as the certificate's block).
std::string encode_config(const PackingConfig& config);
PackingConfig decode_config(std::string_view text);

/// step,n0,batch_size,vol_free,surf_delta_free,widest_width,eps_hat,surf_ratio
std::string stats_csv(const Certificate& cert);

/// {"m":"<decimal mantissa>","p":<exponent>}
std::string encode_dyadic(const Dyadic& x);
Dyadic decode_dyadic(std::string_view text);

}  // namespace cubepack::io
