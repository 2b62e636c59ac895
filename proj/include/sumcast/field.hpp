#ifndef SUMCAST_FIELD_HPP
#define SUMCAST_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sumcast {

// All field elements are canonical residues: integers < p for GF(p),
// bit-packed polynomials < 2^m for GF(2^m).
using FieldElem = std::uint32_t;

struct FieldError : std::runtime_error {
    explicit FieldError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class FieldKind { Prime, BinaryExtension };

struct FieldSpec {
    FieldKind kind = FieldKind::Prime;
    std::uint32_t modulus = 2;   // p for Prime, extension degree m for BinaryExtension
    std::uint32_t poly = 0;      // reduction polynomial incl. x^m term; 0 = table default

    static FieldSpec prime(std::uint32_t p);
    static FieldSpec gf2m(std::uint32_t m, std::uint32_t reduction_poly = 0);

    // CLI syntax: "prime:3" or "gf2m:8"
    static FieldSpec parse(const std::string& text);
    std::string str() const;
};

// Default irreducible polynomials for GF(2^m), m = 1..16, bit m set.
std::uint32_t default_reduction_poly(std::uint32_t m);

class Field {
public:
    explicit Field(const FieldSpec& spec);

    const FieldSpec& spec() const { return spec_; }
    std::uint32_t size() const { return q_; }
    std::uint32_t characteristic() const { return char_; }

    FieldElem zero() const { return 0; }
    FieldElem one() const { return 1; }

    FieldElem add(FieldElem a, FieldElem b) const {
        if (spec_.kind == FieldKind::BinaryExtension) return a ^ b;
        std::uint32_t s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    FieldElem neg(FieldElem a) const {
        if (spec_.kind == FieldKind::BinaryExtension) return a;
        return a == 0 ? 0 : q_ - a;
    }
    FieldElem sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }
    FieldElem mul(FieldElem a, FieldElem b) const;
    FieldElem inv(FieldElem a) const;
    FieldElem pow(FieldElem a, std::uint64_t e) const;
    FieldElem from_int(std::uint64_t v) const;

    std::vector<FieldElem> elements() const;

private:
    FieldSpec spec_;
    std::uint32_t q_ = 0;
    std::uint32_t char_ = 0;
};

// poly arithmetic over GF(2), used for the irreducibility check and reduction
bool gf2_poly_irreducible(std::uint32_t poly);

bool is_prime_u32(std::uint32_t n);

} // namespace sumcast

#endif
