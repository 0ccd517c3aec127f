#include "plots.hpp"

#include <fstream>

namespace dualspin::cli {

namespace {
void write_file(const std::filesystem::path& path, const char* text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}
}  // namespace

void write_simulate_plot(const std::filesystem::path& out_dir) {
    write_file(out_dir / "plot_simulate.gp", R"gp(# gnuplot script; run from this directory:  gnuplot plot_simulate.gp
set terminal pngcairo size 1400,420 font ",10"
set output "simulate.png"
set multiplot layout 1,3

set title "observable time trace (50 ms window)"
set xlabel "t [s]"
set ylabel "M_x"
stats "trajectory.tsv" using 1 nooutput
t0 = STATS_max - 0.05
plot [t0:STATS_max] "trajectory.tsv" using 1:8 with lines lw 1 lc rgb "#1f4e9c" notitle

set title "magnitude spectrum"
set xlabel "f [Hz]"
set ylabel "amplitude"
stats "spectrum.tsv" using ($2) nooutput
set logscale y
plot [][STATS_max*1e-5:STATS_max*2] "spectrum.tsv" using 1:2 with lines lw 1 lc rgb "#1f4e9c" notitle
unset logscale y

set title "Poincare section (M_y = 0, upward)"
set xlabel "M_x total"
set ylabel "M_z total"
plot "poincare.tsv" using 1:2 with points pt 7 ps 0.3 lc rgb "#c02020" notitle

unset multiplot
)gp");
}

void write_phase_diagram_plot(const std::filesystem::path& out_dir) {
    write_file(out_dir / "plot_phase_diagram.gp", R"gp(# gnuplot script; run from this directory:  gnuplot plot_phase_diagram.gp
set terminal pngcairo size 720,560 font ",10"
set output "phase_diagram.png"
set xlabel "frequency difference {/Symbol D}f [Hz]"
set ylabel "feedback gain {/Symbol a}/{/Symbol a}_c"
set title "dynamical regimes"
# no_signal white, limit_cycle blue, quasi-periodic purple, chaos orange, failed red
code(s) = (s eq "no_signal") ? 0 : (s eq "limit_cycle") ? 1 : (s eq "quasi_periodic") ? 2 : (s eq "chaos") ? 3 : 4
set palette defined (0 "white", 1 "#2060c0", 2 "#7030a0", 3 "#f08020", 4 "#d01010")
set cbrange [0:4]
unset colorbox
set key outside
plot "phase_diagram.tsv" using 1:2:(code(strcol(3))) with points pt 5 ps 1.6 palette notitle, \
     NaN with points pt 5 lc rgb "#2060c0" title "limit cycle", \
     NaN with points pt 5 lc rgb "#7030a0" title "quasi-periodic", \
     NaN with points pt 5 lc rgb "#f08020" title "chaos", \
     NaN with points pt 5 lc rgb "#d01010" title "failed"
)gp");
}

void write_robustness_plot(const std::filesystem::path& out_dir) {
    write_file(out_dir / "plot_robustness.gp", R"gp(# gnuplot script; run from this directory:  gnuplot plot_robustness.gp
set terminal pngcairo size 640,480 font ",10"
set output "robustness.png"
set xlabel "field noise {/Symbol s}_B [nT]"
set ylabel "Q"
set yrange [0:1.05]
set key bottom left
plot "robustness.tsv" using (strcol(1) eq "limit_cycle" ? $2 : NaN):3:4 with yerrorlines lw 2 pt 7 lc rgb "#2060c0" title "limit cycle", \
     "robustness.tsv" using (strcol(1) eq "quasi_periodic" ? $2 : NaN):3:4 with yerrorlines lw 2 pt 7 lc rgb "#c02020" title "quasi-periodic"
)gp");
}

}  // namespace dualspin::cli
