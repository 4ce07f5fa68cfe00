#pragma once
// Descriptions of infinite (or large finite) integer sets, used as the
// ambient set E when building pieces inside a difference set E - E.
// Grammar: all | arith:a,d | powers:b | file:<path>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "recforge/numeric.hpp"

namespace recforge {

class IntStream {
  public:
    enum class Kind { All, Arith, Powers, Geometric, File };

    static IntStream all();
    static IntStream arith(Int a, Int step);   // a, a+step, a+2*step, ...
    static IntStream powers(Int base);         // 1, b, b^2, ...
    static IntStream geometric(Int a, Int ratio);  // a, a*r, a*r^2, ...
    static IntStream from_list(std::vector<Int> elems);  // finite

    // Parses the CLI grammar; nullopt on malformed spec or unreadable file.
    static std::optional<IntStream> parse(const std::string& spec);

    Kind kind() const { return kind_; }
    bool finite() const { return kind_ == Kind::File; }
    std::uint64_t list_size() const { return elems_.size(); }

    // i-th element in increasing enumeration order (All starts at 0).
    Int element(std::uint64_t i) const;

    bool contains(const Int& x) const;
    // True iff x = e1 - e2 for some e1, e2 in the stream. Exact for All,
    // Arith, Powers; for File decided against the explicit element list.
    bool is_difference(const Int& x) const;

    const std::vector<Int>& list() const { return elems_; }
    const Int& arith_start() const { return a_; }
    const Int& arith_step() const { return step_; }
    const Int& power_base() const { return base_; }

    std::string describe() const;

  private:
    Kind kind_ = Kind::All;
    Int a_ = 0, step_ = 1, base_ = 2;
    std::vector<Int> elems_;
};

}  // namespace recforge
