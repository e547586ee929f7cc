#pragma once

namespace malevich {

// Numerical tolerances used across the library. Values are absolute.
struct Tolerances {
  double hermitian = 1e-12;
  double trace = 1e-12;
  double norm = 1e-12;
  double box = 1e-12;
  double psd = 1e-10;
  double ball = 1e-10;
  double eigen = 1e-10;
  double roundtrip = 1e-10;
  double geometry = 1e-10;
  double numeric = 1e-10;
  double kraus = 1e-10;
  double unitary = 1e-10;
  double cross_check = 1e-10;
  double exponential = 1e-9;

  // Every field set to the same value.
  static Tolerances uniform(double value);
};

inline Tolerances Tolerances::uniform(double value) {
  Tolerances t;
  t.hermitian = t.trace = t.norm = t.box = value;
  t.psd = t.ball = t.eigen = t.roundtrip = value;
  t.geometry = t.numeric = t.kraus = t.unitary = value;
  t.cross_check = t.exponential = value;
  return t;
}

inline const Tolerances kDefaultTolerances{};

}  // namespace malevich
