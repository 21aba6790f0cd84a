#pragma once

#include <cstdint>
#include <string>
#include <tuple>

namespace feqlab {

/// Fixed variable alphabets.
/// Complex form: z, zbar and the average-image variables x, xbar, y, ybar.
/// Real form: the bivariate pair u, w; coordinates x1..xd; step coordinates
/// h1..hd; and indexed step families h[r]1..h[r]d for mixed differences.
/// The enum order is the global term ordering.
enum class VarKind : std::uint8_t {
    Z,
    Zbar,
    X,
    Xbar,
    Y,
    Ybar,
    U,
    W,
    Coord,
    Step,
    FamilyStep,
};

struct VarId {
    VarKind kind = VarKind::Z;
    unsigned family = 0; // FamilyStep only: r >= 1
    unsigned index = 0;  // Coord/Step/FamilyStep only: 1-based coordinate

    friend bool operator==(const VarId& a, const VarId& b) {
        return a.kind == b.kind && a.family == b.family && a.index == b.index;
    }
    friend bool operator!=(const VarId& a, const VarId& b) { return !(a == b); }
    friend bool operator<(const VarId& a, const VarId& b) {
        return std::tuple(a.kind, a.family, a.index) < std::tuple(b.kind, b.family, b.index);
    }

    bool is_real_form() const { return kind >= VarKind::U; }

    /// Conjugate partner: z <-> zbar, x <-> xbar, y <-> ybar;
    /// real-form variables are self-conjugate.
    VarId conjugate() const {
        switch (kind) {
            case VarKind::Z: return {VarKind::Zbar, 0, 0};
            case VarKind::Zbar: return {VarKind::Z, 0, 0};
            case VarKind::X: return {VarKind::Xbar, 0, 0};
            case VarKind::Xbar: return {VarKind::X, 0, 0};
            case VarKind::Y: return {VarKind::Ybar, 0, 0};
            case VarKind::Ybar: return {VarKind::Y, 0, 0};
            default: return *this;
        }
    }

    std::string name() const {
        switch (kind) {
            case VarKind::Z: return "z";
            case VarKind::Zbar: return "zbar";
            case VarKind::X: return "x";
            case VarKind::Xbar: return "xbar";
            case VarKind::Y: return "y";
            case VarKind::Ybar: return "ybar";
            case VarKind::U: return "u";
            case VarKind::W: return "w";
            case VarKind::Coord: return "x" + std::to_string(index);
            case VarKind::Step: return "h" + std::to_string(index);
            case VarKind::FamilyStep:
                return "h[" + std::to_string(family) + "]" + std::to_string(index);
        }
        return "?";
    }
};

inline VarId var_z() { return {VarKind::Z, 0, 0}; }
inline VarId var_zbar() { return {VarKind::Zbar, 0, 0}; }
inline VarId var_x() { return {VarKind::X, 0, 0}; }
inline VarId var_xbar() { return {VarKind::Xbar, 0, 0}; }
inline VarId var_y() { return {VarKind::Y, 0, 0}; }
inline VarId var_ybar() { return {VarKind::Ybar, 0, 0}; }
inline VarId var_u() { return {VarKind::U, 0, 0}; }
inline VarId var_w() { return {VarKind::W, 0, 0}; }
inline VarId coord(unsigned i) { return {VarKind::Coord, 0, i}; }
inline VarId step(unsigned i) { return {VarKind::Step, 0, i}; }
inline VarId family_step(unsigned r, unsigned i) { return {VarKind::FamilyStep, r, i}; }

} // namespace feqlab
