"""hbsim - Hybrid beamforming simulator source package."""
