// Regenerates the data/ files. The recurrence operators are entered here in
// the same factored shape they are published in, expanded exactly, and
// shifted to the p0-first normal form (relation valid from n = 0). Run after
// any edit and commit the refreshed files together with checksums.txt:
//
//   make_data [output-dir]

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "aplim/bivariate_poly.hpp"
#include "aplim/data.hpp"
#include "aplim/recurrence.hpp"

using aplim::BivariatePoly;
using aplim::Int;
using aplim::Recurrence;

namespace {

const BivariatePoly N = BivariatePoly::n();
const BivariatePoly Z = BivariatePoly::z();
BivariatePoly C(long c) { return BivariatePoly::constant(c); }

// a z + b, a z^2 + b z + c, a z^3 + b z^2 + c z + d
BivariatePoly lin(long a, long b) { return C(a) * Z + C(b); }
BivariatePoly quad(long a, long b, long c) { return (C(a) * Z + C(b)) * Z + C(c); }
BivariatePoly cub(long a, long b, long c, long d) {
    return ((C(a) * Z + C(b)) * Z + C(c)) * Z + C(d);
}
BivariatePoly np(unsigned k) { return N.pow(k); }

BivariatePoly p0_quartic() {
    return 16 * lin(27, -32) * np(4) + 48 * lin(13, -14) * np(3) + 8 * lin(18, -11) * np(2) -
           4 * lin(19, -24) * N - lin(7, 6);
}

// Inner degree-8 factor shared by the J_n and A_{n-1} coefficients.
BivariatePoly q8_inner() {
    return 256 * lin(3, 8) * lin(27, -32) * np(8) - 256 * lin(3, 8) * lin(15, -22) * np(7) -
           64 * quad(651, 661, -1744) * np(6) + 192 * quad(59, 0, -186) * np(5) +
           16 * quad(1503, 697, -3610) * np(4) - 16 * quad(79, -290, 116) * np(3) -
           4 * quad(569, -381, -580) * np(2) + 4 * quad(11, -44, 18) * N +
           3 * lin(4, 3) * lin(7, -10);
}

Recurrence j_family() {
    BivariatePoly r4 = 16 * lin(27, -32) * np(4) - 16 * lin(69, -86) * np(3) +
                       8 * lin(108, -143) * np(2) - 4 * lin(55, -76) * N + 3 * lin(7, -10);
    BivariatePoly c_up = 4 * Z.pow(4) * (2 * N + C(1)).pow(2) * (N + C(1)).pow(2) * r4;
    BivariatePoly c_0 = Z.pow(2) * q8_inner();
    BivariatePoly s7 = 64 * quad(3, -20, 16) * lin(27, -32) * np(7) -
                       384 * quad(3, -20, 16) * lin(7, -9) * np(6) -
                       16 * cub(411, -2698, 3988, -1696) * np(5) +
                       64 * cub(183, -1372, 2339, -1134) * np(4) +
                       4 * cub(531, -1400, -424, 1240) * np(3) -
                       8 * cub(571, -4001, 6532, -3060) * np(2) +
                       cub(151, -4742, 11596, -6888) * N + 12 * quad(14, -29, -30) * lin(1, -1);
    BivariatePoly c_m1 = 4 * N * s7;
    BivariatePoly c_m2 =
        4 * N * (N - C(1)) * (2 * N - C(3)).pow(2) * lin(1, -1) * p0_quartic();
    // Printed in shifts n+1 .. n-2; substitute n -> n+2 for the normal form.
    return Recurrence("j_family",
                      {c_up.shift_n(2), c_0.shift_n(2), c_m1.shift_n(2), c_m2.shift_n(2)});
}

Recurrence a_wedge() {
    BivariatePoly p0 = p0_quartic();
    BivariatePoly p0m = p0.shift_n(-1), p0p = p0.shift_n(1);
    BivariatePoly c_up = 4 * (N + C(1)) * (N + C(2)).pow(2) * (2 * N + C(1)).pow(2) *
                         (2 * N + C(3)).pow(2) * Z.pow(8) * p0 * p0m;
    BivariatePoly q7 = 64 * quad(3, -20, 16) * lin(27, -32) * np(7) +
                       64 * quad(3, -20, 16) * lin(147, -170) * np(6) +
                       16 * cub(3369, -26678, 44012, -20576) * np(5) +
                       16 * cub(2457, -20918, 34376, -15896) * np(4) +
                       4 * cub(843, -16808, 29432, -13736) * np(3) -
                       4 * cub(1445, -6794, 9600, -4144) * np(2) -
                       cub(741, -6922, 10772, -4728) * N + Z.pow(2) * lin(131, -66);
    BivariatePoly c_0 = -(4 * (N + C(1)).pow(2) * (2 * N + C(1)).pow(2) * Z.pow(4) * p0m * q7);
    BivariatePoly c_m1 =
        -(N * (2 * N - C(1)).pow(2) * lin(-1, 1) * Z.pow(2) * p0p * q8_inner());
    BivariatePoly c_m2 = -(4 * (N - C(1)) * np(2) * (2 * N - C(3)).pow(2) *
                           (2 * N - C(1)).pow(2) * lin(-1, 1).pow(2) * p0 * p0p);
    return Recurrence("a_wedge",
                      {c_up.shift_n(2), c_0.shift_n(2), c_m1.shift_n(2), c_m2.shift_n(2)});
}

Recurrence apery_zeta3() {
    BivariatePoly c_up = (N + C(1)).pow(3);
    BivariatePoly c_0 = -((2 * N + C(1)) * (17 * np(2) + 17 * N + C(5)));
    BivariatePoly c_m1 = np(3);
    return Recurrence("apery_zeta3", {c_up.shift_n(1), c_0.shift_n(1), c_m1.shift_n(1)});
}

// Minimal Weierstrass models for the curves the identity checks run against,
// keyed by k^2. Conductor and model are validated at runtime through the
// functional-equation consistency test and the identity suite.
const char* curves_txt =
    "# label k2 a1 a2 a3 a4 a6 conductor\n"
    "15a8 1 1 1 1 0 0 15\n"
    "56a1 2 0 0 0 1 2 56\n"
    "24a4 4 0 -1 0 1 0 24\n"
    "32a1 8 0 0 0 -1 0 32\n"
    "21a4 9 1 0 0 -4 -1 21\n";

void write_file(const std::filesystem::path& dir, const std::string& name,
                const std::string& content, std::string* checksums) {
    std::ofstream out(dir / name, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(aplim::data::fnv1a64(content)));
    *checksums += name + " " + buf + "\n";
    std::cout << "wrote " << (dir / name).string() << " (" << buf << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
    std::filesystem::path dir = argc > 1 ? argv[1] : "data";
    std::filesystem::create_directories(dir);
    try {
        std::string checksums;
        write_file(dir, "apery_zeta3.rec", format_recurrence(apery_zeta3()), &checksums);
        write_file(dir, "j_family.rec", format_recurrence(j_family()), &checksums);
        write_file(dir, "a_wedge.rec", format_recurrence(a_wedge()), &checksums);
        write_file(dir, "curves.txt", curves_txt, &checksums);
        std::ofstream out(dir / "checksums.txt", std::ios::binary);
        out << checksums;
        if (!out) throw std::runtime_error("cannot write checksums.txt");
        std::cout << "wrote " << (dir / "checksums.txt").string() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "make_data: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
