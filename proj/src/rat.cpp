#include "crdyn/rat.hpp"

#include <cctype>
#include <functional>

namespace crdyn {

std::optional<Rat> rat_try_parse(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::size_t i = 0;
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') {
        neg = (text[i] == '-');
        ++i;
    }
    if (i >= text.size()) return std::nullopt;

    auto digits = [&](std::string& out) {
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) out += text[i++];
        return i > start;
    };

    std::string ipart;
    if (!digits(ipart)) return std::nullopt;

    Rat value;
    if (i < text.size() && text[i] == '/') {
        ++i;
        std::string den;
        if (!digits(den) || i != text.size()) return std::nullopt;
        mpz_class d(den);
        if (d == 0) return std::nullopt;
        value = Rat(mpz_class(ipart), d);
        value.canonicalize();
    } else if (i < text.size() && text[i] == '.') {
        ++i;
        std::string frac;
        if (!digits(frac) || i != text.size()) return std::nullopt;
        mpz_class scale = 1;
        for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
        value = Rat(mpz_class(ipart) * scale + mpz_class(frac), scale);
        value.canonicalize();
    } else {
        if (i != text.size()) return std::nullopt;
        value = Rat(mpz_class(ipart));
    }
    if (neg) value = -value;
    return value;
}

Rat rat_parse(const std::string& text) {
    auto v = rat_try_parse(text);
    if (!v) throw std::invalid_argument("not a rational: '" + text + "'");
    return *v;
}

std::string rat_str(const Rat& q) {
    // Defensive copy: tolerate a value built with the raw two-argument
    // constructor (which skips reduction).
    Rat r = q;
    r.canonicalize();
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::size_t rat_hash(const Rat& q) {
    return std::hash<std::string>{}(rat_str(q));
}

Rat floor_to_mesh(const Rat& q, const Rat& mesh) {
    mpz_class f;
    Rat scaled = q / mesh;
    mpz_fdiv_q(f.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    return Rat(f) * mesh;
}

Rat ceil_to_mesh(const Rat& q, const Rat& mesh) {
    mpz_class c;
    Rat scaled = q / mesh;
    mpz_cdiv_q(c.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    return Rat(c) * mesh;
}

}  // namespace crdyn
