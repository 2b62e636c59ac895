#include "sumcast/field.hpp"

#include <array>

namespace sumcast {

namespace {

int poly_degree(std::uint32_t p) {
    int d = -1;
    while (p) {
        ++d;
        p >>= 1;
    }
    return d;
}

// remainder of a mod b over GF(2)[x]
std::uint32_t gf2_poly_mod(std::uint64_t a, std::uint32_t b) {
    int db = poly_degree(b);
    for (int d = 63; d >= db; --d) {
        if (a >> d & 1) a ^= static_cast<std::uint64_t>(b) << (d - db);
    }
    return static_cast<std::uint32_t>(a);
}

std::uint64_t gf2_poly_mul(std::uint32_t a, std::uint32_t b) {
    std::uint64_t r = 0;
    for (int i = 0; i < 32; ++i)
        if (b >> i & 1) r ^= static_cast<std::uint64_t>(a) << i;
    return r;
}

constexpr std::array<std::uint32_t, 17> kDefaultPoly = {
    0,       // m = 0 unused
    0x3,     // x + 1
    0x7,     // x^2 + x + 1
    0xB,     // x^3 + x + 1
    0x13,    // x^4 + x + 1
    0x25,    // x^5 + x^2 + 1
    0x43,    // x^6 + x + 1
    0x89,    // x^7 + x^3 + 1
    0x11D,   // x^8 + x^4 + x^3 + x^2 + 1
    0x211,   // x^9 + x^4 + 1
    0x409,   // x^10 + x^3 + 1
    0x805,   // x^11 + x^2 + 1
    0x1053,  // x^12 + x^6 + x^4 + x + 1
    0x201B,  // x^13 + x^4 + x^3 + x + 1
    0x4443,  // x^14 + x^10 + x^6 + x + 1
    0x8003,  // x^15 + x + 1
    0x1100B, // x^16 + x^12 + x^3 + x + 1
};

} // namespace

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool gf2_poly_irreducible(std::uint32_t poly) {
    int m = poly_degree(poly);
    if (m < 1) return false;
    if (m == 1) return true;
    // trial division by every polynomial of degree 1 .. m/2
    for (std::uint32_t d = 2; poly_degree(d) <= m / 2; ++d) {
        if (gf2_poly_mod(poly, d) == 0) return false;
    }
    return true;
}

std::uint32_t default_reduction_poly(std::uint32_t m) {
    if (m < 1 || m > 16) throw FieldError("extension degree must be in 1..16, got " + std::to_string(m));
    return kDefaultPoly[m];
}

FieldSpec FieldSpec::prime(std::uint32_t p) {
    FieldSpec s;
    s.kind = FieldKind::Prime;
    s.modulus = p;
    return s;
}

FieldSpec FieldSpec::gf2m(std::uint32_t m, std::uint32_t reduction_poly) {
    FieldSpec s;
    s.kind = FieldKind::BinaryExtension;
    s.modulus = m;
    s.poly = reduction_poly;
    return s;
}

FieldSpec FieldSpec::parse(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw FieldError("field spec must look like prime:3 or gf2m:8, got \"" + text + "\"");
    std::string head = text.substr(0, colon);
    std::uint32_t val = 0;
    try {
        val = static_cast<std::uint32_t>(std::stoul(text.substr(colon + 1)));
    } catch (const std::exception&) {
        throw FieldError("bad field spec number in \"" + text + "\"");
    }
    if (head == "prime") return prime(val);
    if (head == "gf2m") return gf2m(val);
    throw FieldError("unknown field kind \"" + head + "\"");
}

std::string FieldSpec::str() const {
    if (kind == FieldKind::Prime) return "prime:" + std::to_string(modulus);
    return "gf2m:" + std::to_string(modulus);
}

Field::Field(const FieldSpec& spec) : spec_(spec) {
    if (spec_.kind == FieldKind::Prime) {
        if (!is_prime_u32(spec_.modulus))
            throw FieldError("modulus " + std::to_string(spec_.modulus) + " is not prime");
        q_ = spec_.modulus;
        char_ = spec_.modulus;
    } else {
        std::uint32_t m = spec_.modulus;
        if (m < 1 || m > 16) throw FieldError("extension degree must be in 1..16, got " + std::to_string(m));
        if (spec_.poly == 0) spec_.poly = default_reduction_poly(m);
        if (poly_degree(spec_.poly) != static_cast<int>(m))
            throw FieldError("reduction polynomial degree does not match m");
        if (!gf2_poly_irreducible(spec_.poly))
            throw FieldError("reduction polynomial is not irreducible over GF(2)");
        q_ = 1u << m;
        char_ = 2;
    }
}

FieldElem Field::mul(FieldElem a, FieldElem b) const {
    if (spec_.kind == FieldKind::Prime)
        return static_cast<FieldElem>(static_cast<std::uint64_t>(a) * b % q_);
    return gf2_poly_mod(gf2_poly_mul(a, b), spec_.poly);
}

FieldElem Field::pow(FieldElem a, std::uint64_t e) const {
    FieldElem r = one();
    FieldElem base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

FieldElem Field::inv(FieldElem a) const {
    if (a == 0) throw FieldError("zero has no multiplicative inverse");
    return pow(a, static_cast<std::uint64_t>(q_) - 2);
}

FieldElem Field::from_int(std::uint64_t v) const {
    if (spec_.kind == FieldKind::Prime) return static_cast<FieldElem>(v % q_);
    return static_cast<FieldElem>(v & (q_ - 1));
}

std::vector<FieldElem> Field::elements() const {
    std::vector<FieldElem> out(q_);
    for (std::uint32_t i = 0; i < q_; ++i) out[i] = i;
    return out;
}

} // namespace sumcast
