#pragma once

// Verdict record shared by every verifier. Witnesses hold exact values as
// strings so a certificate survives a JSON round trip bit-for-bit.

#include <array>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

#include <openssl/evp.h>

#include <json.hpp>

namespace heisconvex {

using json = nlohmann::json;

enum class Verdict { pass, fail };

inline std::string to_string(Verdict v) { return v == Verdict::pass ? "PASS" : "FAIL"; }

inline Verdict verdict_from_string(const std::string& s) {
    if (s == "PASS") return Verdict::pass;
    if (s == "FAIL") return Verdict::fail;
    throw std::invalid_argument("unknown verdict '" + s + "'");
}

inline std::string sha256_hex(const std::string& data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    std::ostringstream os;
    for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

struct Certificate {
    std::string claim;
    Verdict verdict = Verdict::fail;
    json witnesses = json::object();
    std::uint64_t seed = 0;
    json inputs = json::object();
    std::string paper_anchor;

    [[nodiscard]] bool passed() const { return verdict == Verdict::pass; }

    [[nodiscard]] std::string inputs_digest() const { return sha256_hex(inputs.dump()); }

    [[nodiscard]] json to_json() const {
        return json{{"claim", claim},
                    {"verdict", to_string(verdict)},
                    {"witnesses", witnesses},
                    {"seed", std::to_string(seed)},
                    {"inputs", inputs},
                    {"inputs_digest", inputs_digest()},
                    {"paper_anchor", paper_anchor}};
    }

    static Certificate from_json(const json& j) {
        Certificate c;
        c.claim = j.at("claim").get<std::string>();
        c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
        c.witnesses = j.at("witnesses");
        c.seed = std::stoull(j.at("seed").get<std::string>());
        c.inputs = j.value("inputs", json::object());
        c.paper_anchor = j.value("paper_anchor", "");
        return c;
    }
};

inline Verdict verdict_of(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

}  // namespace heisconvex
