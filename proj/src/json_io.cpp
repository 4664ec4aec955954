#include "perind/json_io.hpp"

#include "perind/error.hpp"

#include <fstream>

namespace perind {

nlohmann::json integer_to_json(const Integer& x)
{
    if (mpz_fits_slong_p(x.get_mpz_t())) return static_cast<std::int64_t>(x.get_si());
    return x.get_str();
}

Integer integer_from_json(const nlohmann::json& j)
{
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        Integer x;
        const auto& s = j.get_ref<const std::string&>();
        if (s.empty() || x.set_str(s, 10) != 0)
            throw Error(ErrorKind::MalformedInput, "not a decimal integer: \"" + s + "\"");
        return x;
    }
    throw Error(ErrorKind::MalformedInput, "expected an integer, got " + j.dump());
}

nlohmann::json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::MalformedInput, "cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::MalformedInput, path + ": " + e.what());
    }
}

} // namespace perind
