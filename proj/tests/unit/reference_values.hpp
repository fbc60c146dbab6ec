#pragma once

// Reference values computed once with mpmath at 40 significant digits.

namespace ref {

struct PcfPoint { double nu, z, value; };

inline constexpr PcfPoint pcf_table[] = {
    {-4.5, -6, 1.036767421268722856e+6},
    {-4.5, -2.5, 4.3725847002150090447e+1},
    {-4.5, -0.3, 4.2274879307854688364e-1},
    {-4.5, 0, 2.3167242176333719678e-1},
    {-4.5, 0.7, 5.6025140342269385252e-2},
    {-4.5, 3, 3.011693065304153929e-4},
    {-4.5, 12, 2.9731073577925535128e-21},
    {-4.5, 25, 6.9540738861816243672e-75},
    {-2, -6, 1.2186851571058668727e+5},
    {-2, -2.5, 2.9920103095239195128e+1},
    {-2, -0.3, 1.4529869157046837886},
    {-2, 0, 1.0},
    {-2, 0.7, 4.0481869033982680207e-1},
    {-2, 3, 9.0884806825297932667e-3},
    {-2, 12, 1.5783336870697788261e-18},
    {-2, 25, 2.2056374371983744985e-71},
    {-1.3, -6, 3.8623580219116775741e+4},
    {-1.3, -2.5, 1.7126392923325619472e+1},
    {-1.3, -0.3, 1.6049300711693636434},
    {-1.3, 0, 1.2106113551862707246},
    {-1.3, 0.7, 5.9856660689708109728e-1},
    {-1.3, 3, 2.2141635035490804302e-2},
    {-1.3, 12, 9.0790152781044867668e-18},
    {-1.3, 25, 2.1044129856606229286e-70},
    {-1, -6, 2.031141926452948053e+4},
    {-1, -2.5, 1.1884196683235238922e+1},
    {-1, -0.3, 1.5841189283711581355},
    {-1, 0, 1.2533141373155002512},
    {-1, 0.7, 6.855531637195097166e-1},
    {-1, 3, 3.2103581293111514506e-2},
    {-1, 12, 1.9197829111440596667e-17},
    {-1, 25, 5.5316549299416132099e-70},
    {-0.5, -6, 4.7304267231445331474e+3},
    {-0.5, -2.5, 4.6576064659609868495},
    {-0.5, -0.3, 1.3909136236307111791},
    {-0.5, 0, 1.2162802142575202831},
    {-0.5, 0.7, 8.1419045071906124959e-1},
    {-0.5, 3, 5.8756547729294152839e-2},
    {-0.5, 12, 6.6787060543193631293e-17},
    {-0.5, 25, 2.7685823760767369042e-69},
    {0, -6, 1.234098040866795495e-4},
    {0, -2.5, 2.0961138715109782252e-1},
    {0, -0.3, 9.7775123719333636556e-1},
    {0, 0, 1.0},
    {0, 0.7, 8.8470590494348357324e-1},
    {0, 3, 1.0539922456186433678e-1},
    {0, 12, 2.3195228302435693883e-16},
    {0, 25, 1.385119369922601677e-68},
    {0.25, -6, -4.6048824275948858311e+2},
    {0.25, -2.5, -8.6240919419301546532e-1},
    {0.25, -0.3, 6.9515163451525462533e-1},
    {0.25, 0, 8.1540884454583522488e-1},
    {0.25, 0.7, 8.807876775430263815e-1},
    {0.25, 3, 1.4000812649177354398e-1},
    {0.25, 12, 4.3199060429087247955e-16},
    {0.25, 25, 3.0976847611516561337e-68},
    {0.5, -6, -4.1287080696944272019e+2},
    {0.5, -2.5, -1.241134500003710008},
    {0.5, -0.3, 3.7576243448877605798e-1},
    {0.5, 0, 5.8136831701911858184e-1},
    {0.5, 0.7, 8.4023231019912831987e-1},
    {0.5, 3, 1.8488179000504490795e-1},
    {0.5, 12, 8.0419930572652847302e-16},
    {0.5, 25, 6.9269798999683635089e-68},
    {0.9, -6, -6.955133444443431918e+1},
    {0.9, -2.5, -7.7047170532872221327e-1},
    {0.9, -0.3, -1.6346534935914716971e-1},
    {0.9, 0, 1.2435709833159204166e-1},
    {0.9, 0.7, 6.801521694820929049e-1},
    {0.9, 3, 2.8464108692579156667e-1},
    {0.9, 12, 2.1716855039596024151e-15},
    {0.9, 25, 2.5099464144508301723e-67},
    {1, -6, -7.4045882452007729699e-4},
    {1, -2.5, -5.2402846787774455631e-1},
    {1, -0.3, -2.9332537115800089881e-1},
    {1, 0, 0.0},
    {1, 0.7, 6.1929413346043846198e-1},
    {1, 3, 3.1619767368559301035e-1},
    {1, 12, 2.783427396292283266e-15},
    {1, 25, 3.4627984248065041925e-67},
    {1.5, -6, 1.1201148024438974747e+2},
    {1.5, -2.5, 7.7403301702878159526e-1},
    {1.5, -0.3, -8.0818554216198840276e-1},
    {1.5, 0, -6.0814010712876014155e-1},
    {1.5, 0.7, 1.810673917798591618e-1},
    {1.5, 3, 5.2526709615048764742e-1},
    {1.5, 12, 9.6169981384467448606e-15},
    {1.5, 25, 1.7303606838040525088e-66},
    {2.7, -6, -3.8587784738719857733e+1},
    {2.7, -2.5, -7.7729504260067601522e-1},
    {2.7, -0.3, 9.2463760255589047865e-2},
    {2.7, 0, -6.1741179114499779169e-1},
    {2.7, 0.7, -1.3567715212062870656},
    {2.7, 3, 1.5219277952056545969},
    {2.7, 12, 1.871578909379898176e-13},
    {2.7, 25, 8.2097026442143770197e-65},
    {5.5, -6, 4.3224660799607343497e+1},
    {5.5, -2.5, -3.7074354169788712498},
    {5.5, -0.3, -9.672424700433600982},
    {5.5, 0, -6.8415762051985515925},
    {5.5, 0.7, 7.7745425896576104755},
    {5.5, 3, -2.0138190213612992925},
    {5.5, 12, 1.8301668354213920738e-10},
    {5.5, 25, 6.6298338670683153214e-61},
    {-7.25, -6, 1.9255507631737348823e+6},
    {-7.25, -2.5, 1.6470575189776093887e+1},
    {-7.25, -0.3, 4.4548591616449357965e-2},
    {-7.25, 0, 2.0419610850485731752e-2},
    {-7.25, 0.7, 3.2723372476818322694e-3},
    {-7.25, 3, 5.143558462349661249e-6},
    {-7.25, 12, 2.8583019513700685559e-24},
    {-7.25, 25, 9.681110792505162109e-79},
};

struct LgPoint { double x, value; };

inline constexpr LgPoint log_gamma_table[] = {
    {1e-8, 18.420680738180208884},
    {0.001, 6.9071788853838536617},
    {0.5, 0.57236494292470008707},
    {0.999, 0.00057803853289138023817},
    {1, 0.0},
    {1.0001, -0.000057713342220471268005},
    {1.5, -0.12078223763524522235},
    {2, 0.0},
    {2.0000001, 4.2278436665324979232e-8},
    {2.49, 0.27767586141517020183},
    {2.5, 0.28468287047291915963},
    {3.7, 1.4280723266653881292},
    {9.99, 12.77931521435019336},
    {10, 12.801827480081469611},
    {33.3, 82.603723581654943008},
    {170.5, 704.00442773420467079},
    {1e5, 1051287.7089736568949},
};

// First-passage density through d1 e^{-t/theta} + d2 sinh(t/theta) + mu theta (1 - e^{-t/theta}).
struct ExpPoint { double theta, mu, sigma2, d1, d2, x0, t, value; };

inline constexpr ExpPoint exp_threshold_table[] = {
    {1, 0, 2, 1, 0, 0, 1, 0.33758768762979910045},
    {1, 0, 2, 1, 1, 0, 0.25, 0.65148535706187927474},
    {1, 0, 2, 1, 1, 0, 1, 0.092129323425440314375},
    {1, 0, 2, 1, 1, 0, 4, 1.4974310535678749366e-164},
    {2, 0.5, 1, 1, 0.3, -1, 1.7, 0.20792820181125118129},
    {0.5, -1, 3, 0.2, 2, -0.4, 0.05, 1.6996626108964188825},
};

struct LaplacePoint { double theta, mu, sigma2, S, x0, lambda, value; };

inline constexpr LaplacePoint fpt_laplace_table[] = {
    {1, 0, 2, 1, 0, 1, 0.36045310946959927037},
    {1, 1, 2, 1, 0, 0.5, 0.68944727652390253336},
    {2, 0, 1, 0.5, -1, 3, 0.034556076335583100706},
    {0.5, 2, 1, 0.3, 0.1, 7, 0.62698025452392528673},
};

}  // namespace ref
