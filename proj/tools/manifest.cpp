#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>
#include <stdexcept>

namespace cbne_tool {

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 unavailable");
    }
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

nlohmann::ordered_json collect_parameters(const CLI::App& cmd) {
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const CLI::Option* opt : cmd.get_options()) {
        const std::string name = opt->get_name(false, true);
        if (name.empty() || name == "--help" || name == "-h" || name == "--manifest") continue;
        if (opt->count() > 0) {
            const auto& res = opt->results();
            if (opt->get_type_size() == 0) {
                params[name] = true;
            } else if (res.size() == 1) {
                params[name] = res.front();
            } else {
                params[name] = res;
            }
        } else if (!opt->get_default_str().empty()) {
            params[name] = opt->get_default_str();
        }
    }
    return params;
}

nlohmann::ordered_json RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["tool"] = "cbne";
    j["version"] = kToolVersion;
    j["subcommand"] = subcommand;
    j["parameters"] = parameters;
    j["seed"] = seed;
    nlohmann::ordered_json in = nlohmann::ordered_json::array();
    for (const auto& path : inputs) in.push_back({{"path", path}, {"sha256", sha256_file(path)}});
    j["inputs"] = std::move(in);
    j["outputs"] = outputs;
    return j;
}

void write_manifest(const std::string& path, const RunManifest& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest " + path);
    out << m.to_json().dump(2) << '\n';
}

}  // namespace cbne_tool
