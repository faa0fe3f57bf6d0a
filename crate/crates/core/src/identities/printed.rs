//! Long polynomials transcribed verbatim from their printed form.
//!
//! Each string is kept exactly as printed, term order included, so that a
//! transcription slip or a misprint shows up as a failed case rather than
//! being quietly repaired. Known misprints are kept alongside their
//! corrections and labelled as such.

/// n₁(μ,q,t): numerator of 2g₁ − g₂ − g₃ after k = q+2, m = t+2q+4.
pub const N1: &str = "4*mu^4+52*mu^3+256*mu^2+576*mu+8*q^4+4*mu^2*q^3+32*mu*q^3+16*q^3*t+96*q^3\
+6*mu^3*q^2+66*mu^2*q^2+264*mu*q^2+8*q^2*t^2+6*mu^2*q^2*t+48*mu*q^2*t+144*q^2*t+416*q^2\
+2*mu^4*q+38*mu^3*q+244*mu^2*q+688*mu*q+2*mu^2*q*t^2+16*mu*q*t^2+48*q*t^2+6*mu^3*q*t\
+66*mu^2*q*t+264*mu*q*t+416*q*t+768*q-mu^4*t^2-7*mu^3*t^2-10*mu^2*t^2+24*mu*t^2+64*t^2\
+mu^4*t+19*mu^3*t+122*mu^2*t+344*mu*t+384*t+512";

/// Denominator printed under n₁.
pub const N1_DEN: &str = "(mu+2)^2*(mu+q+3)*(mu+q+4)*(mu+q+t+3)*(mu+q+t+4)";

/// n₂(μ,q,t): the polynomial factor of 2I₁g₁ − I₂g₂ − I₃g₃.
pub const N2: &str = "18*mu^3+150*mu^2+408*mu+8*q^4+4*mu^2*q^3+32*mu*q^3+16*q^3*t+96*q^3\
+6*mu^3*q^2+66*mu^2*q^2+264*mu*q^2+8*q^2*t^2+6*mu^2*q^2*t+48*mu*q^2*t+128*q^2*t+400*q^2\
+2*mu^4*q+38*mu^3*q+240*mu^2*q+656*mu*q+2*mu^2*q*t^2+16*mu*q*t^2+32*q*t^2+6*mu^3*q*t\
+62*mu^2*q*t+232*mu*q*t+304*q*t+672*q-mu^4*t^2-7*mu^3*t^2-12*mu^2*t^2+8*mu*t^2+24*t^2\
-3*mu^4*t-15*mu^3*t+14*mu^2*t+160*mu*t+192*t+360";

/// Factor in front of n₂.
pub const N2_PREFIX: &str = "(mu+2*q+2*t+4)*(mu+2*q+2*t+5)";

/// Denominator printed under the n₂ expression.
pub const N2_DEN: &str = "(mu+2)^2*(mu+q+3)*(mu+2*q+2)*(mu+2*q+3)*(mu+q+t+3)*(mu+q+t+4)*(mu+q+t+5)";

/// n₂ − n₁ as printed.
pub const N2_MINUS_N1: &str = "-4*mu^4-34*mu^3-106*mu^2-168*mu-16*q^2*t-16*q^2-4*mu^2*q-32*mu*q\
-16*q*t^2-4*mu^2*q*t-32*mu*q*t-112*q*t-96*q-2*mu^2*t^2-16*mu*t^2-40*t^2-4*mu^4*t-34*mu^3*t\
-108*mu^2*t-184*mu*t-192*t-152";

/// I₁, I₂, I₃ in (k, m, μ) as numerator / denominator pairs.
pub const I1: (&str, &str) = (
    "(k+mu+1)*(2*k-mu-2*m-2)*(2*k-mu-2*m-1)",
    "(2*k+mu-1)*(2*k+mu)*(-k+mu+m+2)",
);
pub const I2: (&str, &str) = (
    "(k+mu)*(2*k-mu-2*m-3)*(2*k-mu-2*m-2)",
    "(2*k+mu-2)*(2*k+mu-1)*(-k+mu+m+3)",
);
pub const I3: (&str, &str) = (
    "(k+mu+2)*(2*k-mu-2*m-1)*(2*k-mu-2*m)",
    "(2*k+mu)*(2*k+mu+1)*(-k+mu+m+1)",
);

/// The coefficient of x² in the Turánian of ψ₃ equals −αβ/240 times this.
pub const C_R3: &str = "2*alpha^4+5*alpha^3*beta+10*alpha^3*mu+25*alpha^3+30*alpha^2*beta\
+60*alpha^2*mu+100*alpha^2+5*alpha*beta^3+30*alpha*beta^2+30*alpha*beta*mu+110*alpha*beta\
+30*alpha*mu^2+220*alpha*mu+185*alpha+2*beta^4+10*beta^3*mu+25*beta^3+60*beta^2*mu\
+100*beta^2+30*beta*mu^2+220*beta*mu+185*beta+20*mu^3+220*mu^2+370*mu+156\
-30*alpha*beta*mu^2-20*mu^3*(alpha+beta)-10*mu^4";

/// Ã₁ = αβ times this, in (α, β, μ).
pub const A1_TILDE: &str = "alpha^3*beta+2*alpha^3*mu+alpha^3+4*alpha^2*beta*mu+6*alpha^2*beta\
+4*alpha^2*mu^2+12*alpha^2*mu+6*alpha^2+alpha*beta^3+4*alpha*beta^2*mu+6*alpha*beta^2\
+6*alpha*beta*mu^2+30*alpha*beta*mu+22*alpha*beta+4*alpha*mu^3+30*alpha*mu^2+44*alpha*mu\
+17*alpha+2*beta^3*mu+beta^3+4*beta^2*mu^2+12*beta^2*mu+6*beta^2+4*beta*mu^3+30*beta*mu^2\
+44*beta*mu+17*beta+2*mu^4+20*mu^3+44*mu^2+34*mu+12";

/// Factored form of the bracket in the rearrangement of F(0).
pub const F0_BRACKET: &str = "2*beta*(2*beta*mu+3*beta+8*k^2+4*beta*k+8*k*mu+12*k+2*mu^2+6*mu+3)";

/// Factored form of the bracket in the rearrangement of F′(α).
pub const FPRIME_BRACKET: &str = "2*beta*(2*alpha*beta+4*alpha*mu+6*alpha+2*beta*mu+3*beta\
+8*k^2+8*alpha*k+4*beta*k+8*k*mu+12*k+2*mu^2+6*mu-1)";

/// Numerator of the first difference of ratios for the y-series, as printed.
/// The last term is misprinted.
pub const S5_FIRST_NUM_PRINTED: &str = "i*alpha*beta*(3*i+4*mu+2*alpha+4*beta)";
/// The same numerator with the misprint corrected.
pub const S5_FIRST_NUM: &str = "i*alpha*beta*(3*i+4*mu+2*alpha+2*beta)";
pub const S5_FIRST_DEN: &str = "(mu+i)*(2*mu+i)*(mu+alpha+beta+i)*(2*(mu+alpha+beta)+i)";

pub const S5_SECOND_NUM: &str = "i*beta";
pub const S5_SECOND_DEN: &str = "(mu+i)*(2*mu+i)";

/// Printed values of the x² coefficient polynomial at α = β = 1.
pub const C_R3_POINTS: [(&str, f64, f64); 2] =
    [("5.76788", -0.0998924, 1e-5), ("6.13463", 9.99983, 1e-4)];

/// g₁, g₂, g₃ in (k, m, μ) as numerator / denominator pairs.
pub const G1: (&str, &str) = (
    "(mu+1)^2*(mu+2*k)*(mu+2*(m-k))",
    "(mu+2)^2*(mu+k+1)*(mu+(m-k)+1)",
);
pub const G2: (&str, &str) = (
    "mu*(mu+2*(m-k))*(mu+2*(m-k)+1)",
    "(mu+2)*(mu+(m-k)+1)*(mu+(m-k)+2)",
);
pub const G3: (&str, &str) = ("mu*(mu+2*k)*(mu+2*k+1)", "(mu+2)*(mu+k+1)*(mu+k+2)");
