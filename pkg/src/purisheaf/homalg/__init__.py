"""Cohomology, Hom and Ext for coherent sheaves on P^1."""

from .cech import CechDatum, WindowNotStable, cech, euler_char, free_degree, h0, h1, torsion_length, verify_section
from .hom import HomSheaf, HomSpace, global_hom, hom_dim, hom_sheaf
from .ext import Ext1, Resolution, ResolutionError, ext1, ext1_dim, ext_twist, pushout_extension, resolve
from .dmember import DMembership, is_in_d, window_check
